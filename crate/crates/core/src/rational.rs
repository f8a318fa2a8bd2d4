//! Exact rationals and their canonical text form (`"p/q"` with `q > 0`, or a bare integer).

use std::str::FromStr;

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    // `Ratio::from_str` accepts "p/q" and "n"; reject a zero denominator first
    // because it panics on it.
    if let Some((_, den)) = t.split_once('/') {
        if BigInt::from_str(den.trim()).map(|d| d.is_zero()).unwrap_or(true) {
            return Err(Error::ParseRational(s.to_string()));
        }
    }
    BigRational::from_str(t).map_err(|_| Error::ParseRational(s.to_string()))
}

/// Canonical string: reduced, positive denominator, denominator omitted when 1.
pub fn format_rational(r: &BigRational) -> String {
    // Ratio keeps itself reduced with a positive denominator, and its Display
    // drops a unit denominator.
    r.to_string()
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Smallest integer `≥ r`, for nonnegative `r`.
pub fn ceil_to_usize(r: &BigRational) -> Option<usize> {
    if r.is_negative() {
        return None;
    }
    let c = r.ceil().to_integer();
    c.try_into().ok()
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        match raw {
            RationalRepr::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            RationalRepr::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RationalRepr {
        Text(String),
        Int(i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_to_usize(&ratio(2, 1)), Some(2));
        assert_eq!(ceil_to_usize(&ratio(8, 3)), Some(3));
        assert_eq!(ceil_to_usize(&ratio(-1, 3)), None);
    }
}
