//! Set functions `f: 2^[m] → Q` and the dense table representation.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::subset::{check_dense, SubsetMask, DEFAULT_MAX_DENSE, MAX_GROUND};

/// Anything that can answer value queries `T ↦ f(T)`.
///
/// Implementations must be pure: repeated queries for the same set return
/// the same value.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    fn value(&self, t: SubsetMask) -> Result<BigRational>;
}

/// A full table of `2^m` values indexed by bit pattern, with `f(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSetFunction {
    m: usize,
    values: Vec<BigRational>,
}

impl DenseSetFunction {
    pub fn zeros(m: usize) -> Result<Self> {
        check_dense(m, MAX_GROUND)?;
        Ok(Self {
            m,
            values: vec![BigRational::zero(); 1 << m],
        })
    }

    /// Wraps a table indexed by bit pattern. Rejects a nonzero `f(∅)`.
    pub fn from_values(m: usize, values: Vec<BigRational>) -> Result<Self> {
        check_dense(m, MAX_GROUND)?;
        if values.len() != 1 << m {
            return Err(Error::Malformed(format!(
                "table for m = {m} needs {} values, got {}",
                1usize << m,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::NonZeroEmptyValue(values[0].clone()));
        }
        Ok(Self { m, values })
    }

    /// Tabulates any set function, enforcing the default dense-size guard.
    pub fn tabulate(f: &dyn SetFunction) -> Result<Self> {
        Self::tabulate_with_limit(f, DEFAULT_MAX_DENSE)
    }

    pub fn tabulate_with_limit(f: &dyn SetFunction, limit: usize) -> Result<Self> {
        let m = f.ground_size();
        check_dense(m, limit)?;
        let values = (0..1u32 << m)
            .map(|bits| f.value(SubsetMask::from_raw(bits, m)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(m, values)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, t: SubsetMask) -> &BigRational {
        debug_assert_eq!(t.m(), self.m);
        &self.values[t.index()]
    }

    /// Sets `f(T)`; the empty set is pinned at zero.
    pub fn set(&mut self, t: SubsetMask, value: BigRational) -> Result<()> {
        t.expect_ground(self.m)?;
        if t.is_empty() && !value.is_zero() {
            return Err(Error::NonZeroEmptyValue(value));
        }
        self.values[t.index()] = value;
        Ok(())
    }

    /// Values indexed by bit pattern.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigRational> {
        self.values
    }

    pub fn scale_add(&self, a: &BigRational, other: &Self, b: &BigRational) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self { m: self.m, values })
    }
}

impl SetFunction for DenseSetFunction {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn value(&self, t: SubsetMask) -> Result<BigRational> {
        t.expect_ground(self.m)?;
        Ok(self.values[t.index()].clone())
    }
}
