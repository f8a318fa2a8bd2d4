//! The hard instance `f*` and non-coverage certificates.
//!
//! `f*` has W-coefficients `w(S) = N` for `1 ≤ |S| ≤ k` and `w(S) = −1` for
//! `|S| > k`. Every coefficient above level `k` is negative, yet any family of
//! fewer than `2^k` query answers can be completed to a coverage function
//! (see [`crate::completion`]). A single negative coefficient at level `k + 1`
//! is exposed by the `2^{k+1}` values `f(S̄ ∪ X)`, `X ⊆ S`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binomial::{factorial, BinomialTable};
use crate::error::{Error, Result};
use crate::function::SetFunction;
use crate::oracle::CountingOracle;
use crate::subset::{check_ground, SubsetMask};
use crate::wtransform::{probe_entries, WCoefficients};

/// Largest `m` for which the default `N = (2^m)! + 1` is computed.
pub const DEFAULT_N_MAX_M: usize = 12;

/// `(2^m)! + 1`.
pub fn default_n(m: usize) -> Result<BigRational> {
    check_ground(m)?;
    if m > DEFAULT_N_MAX_M {
        return Err(Error::GroundSetTooLarge {
            m,
            limit: DEFAULT_N_MAX_M,
        });
    }
    Ok(BigRational::from_integer(factorial(1u64 << m) + BigInt::one()))
}

/// Parameters of `f*`, with its values tabulated by `|T|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FStarParams {
    m: usize,
    k: usize,
    n: BigRational,
    by_size: Vec<BigRational>,
}

impl FStarParams {
    /// Uses the default `N = (2^m)! + 1`.
    pub fn new(m: usize, k: usize) -> Result<Self> {
        Self::with_n(m, k, default_n(m)?)
    }

    pub fn with_n(m: usize, k: usize, n: BigRational) -> Result<Self> {
        check_ground(m)?;
        if k >= m {
            return Err(Error::InvalidParameter(format!("threshold k = {k} must be below m = {m}")));
        }
        if !n.is_positive() {
            return Err(Error::InvalidParameter(format!("N must be positive, got {n}")));
        }
        let binom = BinomialTable::new(m);
        let by_size = (0..=m).map(|t| closed_form(&binom, m, k, &n, t)).collect();
        Ok(Self { m, k, n, by_size })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> &BigRational {
        &self.n
    }

    /// `f*(T)` for `|T| = t`.
    pub fn value_at_size(&self, t: usize) -> &BigRational {
        &self.by_size[t]
    }

    pub fn coefficients(&self) -> Result<WCoefficients> {
        WCoefficients::from_fn(self.m, |s| self.coefficient_unchecked(s))
    }

    fn coefficient_unchecked(&self, s: SubsetMask) -> BigRational {
        if s.len() <= self.k {
            self.n.clone()
        } else {
            -BigRational::one()
        }
    }
}

/// `f*(T)` for `|T| = t`: the sets meeting `T` at level `j` number
/// `C(m, j) − C(m − t, j)`.
fn closed_form(binom: &BinomialTable, m: usize, k: usize, n: &BigRational, t: usize) -> BigRational {
    let hits = |j: usize| binom.get(m, j) - binom.get(m - t, j);
    let low: BigInt = (1..=k).map(hits).sum();
    let high: BigInt = (k + 1..=m).map(hits).sum();
    n * BigRational::from_integer(low) - BigRational::from_integer(high)
}

pub fn fstar_w(p: &FStarParams, s: SubsetMask) -> Result<BigRational> {
    s.expect_ground(p.m)?;
    if s.is_empty() {
        return Err(Error::InvalidParameter("W-coefficients are indexed by nonempty sets".into()));
    }
    Ok(p.coefficient_unchecked(s))
}

pub fn fstar_eval(p: &FStarParams, t: SubsetMask) -> Result<BigRational> {
    t.expect_ground(p.m)?;
    Ok(p.by_size[t.len()].clone())
}

impl SetFunction for FStarParams {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn value(&self, t: SubsetMask) -> Result<BigRational> {
        fstar_eval(self, t)
    }
}

/// `Σ_{j>k} C(m, j) / (2^m − 1)`.
pub fn fstar_wdistance(p: &FStarParams) -> BigRational {
    let binom = BinomialTable::new(p.m);
    let negatives: BigInt = (p.k + 1..=p.m).map(|j| binom.get(p.m, j)).sum();
    BigRational::new(negatives, BigInt::from((1u64 << p.m) - 1))
}

/// The values `f(S̄ ∪ X)` for all `X ⊆ S`, whose alternating sum is a
/// negative W-coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCoverageCertificate {
    pub set: SubsetMask,
    pub entries: Vec<(SubsetMask, BigRational)>,
    pub coefficient: BigRational,
}

/// Queries the `2^|S|` sets determining `w(S)` and packages them if the
/// coefficient is negative.
pub fn extract_certificate(o: &CountingOracle, s: SubsetMask) -> Result<NonCoverageCertificate> {
    let (entries, coefficient) = probe_entries(o, s)?;
    if !coefficient.is_negative() {
        return Err(Error::NotNegative {
            set: s,
            value: coefficient,
        });
    }
    Ok(NonCoverageCertificate {
        set: s,
        entries,
        coefficient,
    })
}

pub fn verify_certificate(c: &NonCoverageCertificate) -> bool {
    let s = c.set;
    if s.is_empty() || !c.coefficient.is_negative() || c.entries.len() != 1 << s.len() {
        return false;
    }
    let base = s.complement();
    let mut seen = std::collections::BTreeSet::new();
    let mut acc = BigRational::zero();
    for (t, v) in &c.entries {
        if t.m() != s.m() || !base.is_subset_of(*t) || !seen.insert(*t) {
            return false;
        }
        // X = T ∩ S; sign (-1)^{|X|+1}
        if (t.bits() & s.bits()).count_ones() % 2 == 1 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc == c.coefficient
}
