//! The W-transform of a set function and its inverse.
//!
//! For nonempty `S ⊆ [m]`,
//!
//! ```text
//! w(S) = Σ_{T : S ∪ T = [m]} (-1)^{|S ∩ T| + 1} f(T)
//! ```
//!
//! and conversely `f(T) = Σ_{S ∩ T ≠ ∅} w(S)`. A function with `f(∅) = 0` is
//! a coverage function exactly when every coefficient is nonnegative; the
//! positive coefficients are then the (merged) universe elements.
//!
//! The sets `T` with `S ∪ T = [m]` are `S̄ ∪ X` for `X ⊆ S`, and
//! `S ∩ (S̄ ∪ X) = X`, so a single coefficient costs `2^|S|` values.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::function::DenseSetFunction;
use crate::instance::CoverageInstance;
use crate::oracle::CountingOracle;
use crate::subset::{check_dense, full_bits, raw_subsets, SubsetMask, MAX_GROUND};

/// Coefficients `w(S)` for the `2^m - 1` nonempty sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCoefficients {
    m: usize,
    // values[bits - 1] = w(S)
    values: Vec<BigRational>,
}

impl WCoefficients {
    pub fn zeros(m: usize) -> Result<Self> {
        check_dense(m, MAX_GROUND)?;
        Ok(Self {
            m,
            values: vec![BigRational::zero(); (1 << m) - 1],
        })
    }

    /// `values[i]` is the coefficient of the set with bit pattern `i + 1`.
    pub fn from_values(m: usize, values: Vec<BigRational>) -> Result<Self> {
        check_dense(m, MAX_GROUND)?;
        if values.len() != (1 << m) - 1 {
            return Err(Error::Malformed(format!(
                "coefficients for m = {m} need {} values, got {}",
                (1usize << m) - 1,
                values.len()
            )));
        }
        Ok(Self { m, values })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(SubsetMask) -> BigRational) -> Result<Self> {
        check_dense(m, MAX_GROUND)?;
        let values = (1..=full_bits(m)).map(|b| f(SubsetMask::from_raw(b, m))).collect();
        Ok(Self { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, s: SubsetMask) -> Result<&BigRational> {
        s.expect_ground(self.m)?;
        if s.is_empty() {
            return Err(Error::InvalidParameter(
                "W-coefficients are indexed by nonempty sets".into(),
            ));
        }
        Ok(&self.values[s.index() - 1])
    }

    pub fn set(&mut self, s: SubsetMask, value: BigRational) -> Result<()> {
        self.get(s)?;
        self.values[s.index() - 1] = value;
        Ok(())
    }

    /// `(S, w(S))` over nonempty `S` in ascending bit-pattern order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &BigRational)> + '_ {
        let m = self.m;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (SubsetMask::from_raw(i as u32 + 1, m), v))
    }

    pub fn support(&self) -> Vec<SubsetMask> {
        self.iter().filter(|(_, v)| v.is_positive()).map(|(s, _)| s).collect()
    }

    pub fn negatives(&self) -> Vec<SubsetMask> {
        self.iter().filter(|(_, v)| v.is_negative()).map(|(s, _)| s).collect()
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().sum()
    }
}

fn require_normalized(f: &DenseSetFunction) -> Result<()> {
    let empty = &f.values()[0];
    if !empty.is_zero() {
        return Err(Error::NonZeroEmptyValue(empty.clone()));
    }
    Ok(())
}

/// Alternating sum over `X ⊆ S` of `f(S̄ ∪ X)`.
fn coefficient_from_table(values: &[BigRational], s: u32, full: u32) -> BigRational {
    let base = !s & full;
    let mut acc = BigRational::zero();
    for x in raw_subsets(s) {
        let v = &values[(base | x) as usize];
        // sign (-1)^{|X| + 1}
        if x.count_ones() % 2 == 1 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

/// Forward transform by direct expansion, `O(3^m)`.
pub fn forward(f: &DenseSetFunction) -> Result<WCoefficients> {
    require_normalized(f)?;
    let m = f.m();
    let full = full_bits(m);
    let values = (1..=full)
        .map(|s| coefficient_from_table(f.values(), s, full))
        .collect();
    Ok(WCoefficients { m, values })
}

/// Inverse transform, `O(m 2^m)`.
///
/// `f(T) = W − Σ_{∅ ≠ S ⊆ T̄} w(S)` with `W = Σ_S w(S)`; the subset sums come
/// from one zeta transform.
pub fn inverse(w: &WCoefficients) -> DenseSetFunction {
    let m = w.m;
    let size = 1usize << m;
    let mut zeta: Vec<BigRational> = Vec::with_capacity(size);
    zeta.push(BigRational::zero());
    zeta.extend(w.values.iter().cloned());
    for bit in 0..m {
        let step = 1usize << bit;
        for u in 0..size {
            if u & step != 0 {
                let (lo, hi) = zeta.split_at_mut(u);
                hi[0] += &lo[u ^ step];
            }
        }
    }
    let total = &zeta[size - 1];
    let full = size - 1;
    let values = (0..size).map(|t| total - &zeta[!t & full]).collect();
    DenseSetFunction::from_values(m, values).expect("inverse transform vanishes on the empty set")
}

/// Outcome of the coverage characterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageVerdict {
    /// All coefficients are nonnegative; the instance is the positive part.
    Coverage(CoverageInstance),
    /// A negative coefficient, the least one by bit pattern.
    NotCoverage { set: SubsetMask, value: BigRational },
}

impl CoverageVerdict {
    pub fn is_coverage(&self) -> bool {
        matches!(self, CoverageVerdict::Coverage(_))
    }
}

pub fn verdict_from_coefficients(w: &WCoefficients) -> CoverageVerdict {
    if let Some((set, value)) = w.iter().find(|(_, v)| v.is_negative()) {
        return CoverageVerdict::NotCoverage {
            set,
            value: value.clone(),
        };
    }
    let elements = w
        .iter()
        .filter(|(_, v)| v.is_positive())
        .map(|(s, v)| (s, v.clone()));
    CoverageVerdict::Coverage(CoverageInstance::new(w.m, elements).expect("support elements are valid"))
}

pub fn is_coverage(f: &DenseSetFunction) -> Result<CoverageVerdict> {
    Ok(verdict_from_coefficients(&forward(f)?))
}

/// Computes one coefficient from the oracle with exactly `2^|S|` queries.
pub fn probe_coefficient(o: &CountingOracle, s: SubsetMask) -> Result<BigRational> {
    Ok(probe_entries(o, s)?.1)
}

/// Queries `S̄ ∪ X` for every `X ⊆ S` (ascending `X`) and returns the
/// recorded values together with the alternating sum.
pub(crate) fn probe_entries(
    o: &CountingOracle,
    s: SubsetMask,
) -> Result<(Vec<(SubsetMask, BigRational)>, BigRational)> {
    s.expect_ground(o.m())?;
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "coefficient probes need a nonempty set".into(),
        ));
    }
    let base = s.complement();
    let mut entries = Vec::with_capacity(1 << s.len());
    let mut acc = BigRational::zero();
    for x in s.subsets() {
        let t = SubsetMask::from_raw(base.bits() | x.bits(), s.m());
        let v = o.eval(t)?;
        if x.len() % 2 == 1 {
            acc += &v;
        } else {
            acc -= &v;
        }
        entries.push((t, v));
    }
    Ok((entries, acc))
}

/// Fraction of the `2^m - 1` coefficients that are negative.
pub fn w_distance(w: &WCoefficients) -> BigRational {
    let negatives = w.values.iter().filter(|v| v.is_negative()).count();
    BigRational::new(negatives.into(), w.values.len().into())
}
