//! Can a partial table of values be completed to a coverage function?
//!
//! Given values `f(T)` on a family `𝒥`, the unknowns are `f(T)` for the
//! nonempty `T ∉ 𝒥` (`f(∅) = 0` always). Each nonempty `S` contributes the
//! constraint `w(S) ≥ 0` split into its unknown and known parts:
//!
//! ```text
//! Σ_{T ∉ 𝒥, S ∪ T = [m]} (−1)^{|S∩T|+1} f(T)  ≥  b(S)
//! b(S) = Σ_{T ∈ 𝒥, S ∪ T = [m]} (−1)^{|S∩T|} f(T)
//! ```
//!
//! When the system has no solution the LP duals give multipliers `α ≥ 0` with
//! `Σ α(S) b(S) > 0` and `g(T) = Σ_S α(S) (−1)^{|S∩T|+1} [S ∪ T = [m]] ≤ 0`
//! for every unknown `T`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::adversarial::{default_n, FStarParams};
use crate::error::{Error, Result};
use crate::function::DenseSetFunction;
use crate::oracle::CountingOracle;
use crate::sampling::{distinct_subsets, rng_from_seed};
use crate::simplex::{solve_phase1, Phase1, Relation, Row};
use crate::subset::{check_ground, full_bits, SubsetMask};
use crate::wtransform::{is_coverage, WCoefficients};

/// Largest ground set accepted by the LP routines.
pub const COMPLETION_MAX_M: usize = 8;

/// Observed values on a family of distinct sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryLog {
    m: usize,
    entries: BTreeMap<SubsetMask, BigRational>,
}

impl QueryLog {
    /// Repeated sets must carry the same value. Values must be nonnegative
    /// and `∅`, if present, must map to zero.
    pub fn new(m: usize, entries: impl IntoIterator<Item = (SubsetMask, BigRational)>) -> Result<Self> {
        check_ground(m)?;
        let mut map: BTreeMap<SubsetMask, BigRational> = BTreeMap::new();
        for (t, v) in entries {
            t.expect_ground(m)?;
            if t.is_empty() && !v.is_zero() {
                return Err(Error::NonZeroEmptyValue(v));
            }
            if v.is_negative() {
                return Err(Error::NegativeValue { set: t, value: v });
            }
            match map.get(&t) {
                Some(first) if *first != v => {
                    return Err(Error::InconsistentLog {
                        set: t,
                        first: Box::new(first.clone()),
                        second: Box::new(v),
                    })
                }
                Some(_) => {}
                None => {
                    map.insert(t, v);
                }
            }
        }
        Ok(Self { m, entries: map })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &BTreeMap<SubsetMask, BigRational> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, t: SubsetMask) -> Option<&BigRational> {
        self.entries.get(&t)
    }

    /// `b(S)`: the known part of `w(S)` with its sign flipped.
    pub fn known_part(&self, s: SubsetMask) -> BigRational {
        let base = s.complement();
        let mut acc = BigRational::zero();
        for x in s.subsets() {
            let t = SubsetMask::from_raw(base.bits() | x.bits(), self.m);
            if let Some(v) = self.entries.get(&t) {
                if x.len() % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        acc
    }

    /// Nonempty sets without a recorded value, ascending by bit pattern.
    pub fn unknowns(&self) -> Vec<SubsetMask> {
        (1..=full_bits(self.m))
            .map(|b| SubsetMask::from_raw(b, self.m))
            .filter(|t| !self.entries.contains_key(t))
            .collect()
    }
}

/// Nonnegative multipliers on the constraints `w(S) ≥ 0`, indexed by
/// nonempty `S`. Sets not listed have multiplier zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasWitness {
    pub alpha: BTreeMap<SubsetMask, BigRational>,
}

impl FarkasWitness {
    /// `Σ_S α(S) b(S)`.
    pub fn objective(&self, log: &QueryLog) -> BigRational {
        self.alpha.iter().map(|(s, a)| a * log.known_part(*s)).sum()
    }

    /// `g(T) = Σ_{S ⊇ T̄} α(S) (−1)^{|S∩T|+1}`.
    pub fn column_sum(&self, t: SubsetMask) -> BigRational {
        let mut acc = BigRational::zero();
        for (s, a) in &self.alpha {
            if s.bits() | t.bits() != full_bits(t.m()) {
                continue;
            }
            if (s.bits() & t.bits()).count_ones() % 2 == 1 {
                acc += a;
            } else {
                acc -= a;
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// A full table agreeing with the log whose coefficients are all
    /// nonnegative.
    Feasible(DenseSetFunction),
    Infeasible(FarkasWitness),
}

impl Completion {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Completion::Feasible(_))
    }
}

fn check_lp_size(m: usize) -> Result<()> {
    if m > COMPLETION_MAX_M {
        return Err(Error::GroundSetTooLarge {
            m,
            limit: COMPLETION_MAX_M,
        });
    }
    Ok(())
}

/// Decides completability exactly and returns either a completion or a
/// normalized witness (`Σ α = 1`).
pub fn completion_feasible(log: &QueryLog) -> Result<Completion> {
    let m = log.m;
    check_lp_size(m)?;
    let full = full_bits(m);
    let unknowns = log.unknowns();
    let column: BTreeMap<SubsetMask, usize> = unknowns.iter().enumerate().map(|(j, t)| (*t, j)).collect();

    let sets: Vec<SubsetMask> = (1..=full).map(|b| SubsetMask::from_raw(b, m)).collect();
    let rows: Vec<Row> = sets
        .iter()
        .map(|&s| {
            let base = s.complement();
            let coeffs = s
                .subsets()
                .filter_map(|x| {
                    let t = SubsetMask::from_raw(base.bits() | x.bits(), m);
                    let j = *column.get(&t)?;
                    let sign = if x.len() % 2 == 1 { BigRational::one() } else { -BigRational::one() };
                    Some((j, sign))
                })
                .collect();
            Row {
                coeffs,
                relation: Relation::Ge,
                rhs: log.known_part(s),
            }
        })
        .collect();

    match solve_phase1(unknowns.len(), &rows) {
        Phase1::Feasible(x) => {
            let mut f = DenseSetFunction::zeros(m)?;
            for (t, v) in &log.entries {
                f.set(*t, v.clone())?;
            }
            for (t, v) in unknowns.iter().zip(x) {
                f.set(*t, v)?;
            }
            assert!(
                is_coverage(&f)?.is_coverage(),
                "completion from a feasible basis must have nonnegative coefficients"
            );
            Ok(Completion::Feasible(f))
        }
        Phase1::Infeasible(y) => {
            let total: BigRational = y.iter().sum();
            let alpha = sets
                .into_iter()
                .zip(y)
                .filter(|(_, a)| !a.is_zero())
                .map(|(s, a)| (s, a / &total))
                .collect();
            Ok(Completion::Infeasible(FarkasWitness { alpha }))
        }
    }
}

/// Checks `α ≥ 0`, `Σ α(S) b(S) > 0` and `g(T) ≤ 0` for every unknown `T`.
pub fn check_farkas_witness(wit: &FarkasWitness, log: &QueryLog) -> bool {
    let nonneg = wit
        .alpha
        .iter()
        .all(|(s, a)| s.m() == log.m && !s.is_empty() && !a.is_negative());
    nonneg
        && wit.objective(log).is_positive()
        && log.unknowns().into_iter().all(|t| !wit.column_sum(t).is_positive())
}

/// Independent formulation over the coefficients themselves: `w(S) ≥ 0` and
/// `Σ_{S ∩ T ≠ ∅} w(S) = f(T)` for every logged `T`. Returns a witness
/// coefficient vector when one exists.
pub fn wspace_feasible(log: &QueryLog) -> Result<Option<WCoefficients>> {
    let m = log.m;
    check_lp_size(m)?;
    let full = full_bits(m);
    let rows: Vec<Row> = log
        .entries
        .iter()
        .filter(|(t, _)| !t.is_empty())
        .map(|(t, v)| Row {
            coeffs: (1..=full)
                .filter(|s| s & t.bits() != 0)
                .map(|s| (s as usize - 1, BigRational::one()))
                .collect(),
            relation: Relation::Eq,
            rhs: v.clone(),
        })
        .collect();
    match solve_phase1(full as usize, &rows) {
        Phase1::Feasible(w) => Ok(Some(WCoefficients::from_values(m, w)?)),
        Phase1::Infeasible(_) => Ok(None),
    }
}

/// Counts from the small-log experiment on `f*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotesterReport {
    pub m: usize,
    pub k: usize,
    pub n: BigRational,
    pub seed: u64,
    pub trials: usize,
    pub log_size: usize,
    pub feasible: usize,
    pub infeasible: usize,
    /// Trials on which the coefficient-space LP gave the same answer.
    pub cross_check_agreements: usize,
    pub certificate_set: SubsetMask,
    pub certificate_queries: u64,
    pub certificate_feasible: bool,
    pub certificate_witness_valid: bool,
    pub certificate_cross_check_agrees: bool,
}

/// Runs `trials` random logs of size `2^k − 1` drawn without replacement
/// from all `2^m` sets, each filled with `f*` values for the default `N`,
/// followed by the `2^{k+1}` sets `S̄ ∪ X` for `S = {1, …, k+1}`.
pub fn notester_experiment(m: usize, k: usize, trials: usize, seed: u64) -> Result<NotesterReport> {
    check_ground(m)?;
    check_lp_size(m)?;
    if k + 1 > m {
        return Err(Error::InvalidParameter(format!("need k + 1 ≤ m, got k = {k}, m = {m}")));
    }
    let n = default_n(m)?;
    let params = FStarParams::with_n(m, k, n.clone())?;
    let oracle = CountingOracle::new(params);
    let log_size = (1usize << k) - 1;

    let mut rng = rng_from_seed(seed);
    let (mut feasible, mut infeasible, mut agreements) = (0, 0, 0);
    for _ in 0..trials {
        let sets = distinct_subsets(&mut rng, m, log_size);
        let entries = sets
            .into_iter()
            .map(|t| Ok((t, oracle.eval(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let log = QueryLog::new(m, entries)?;
        let outcome = completion_feasible(&log)?;
        if outcome.is_feasible() {
            feasible += 1;
        } else {
            infeasible += 1;
        }
        if wspace_feasible(&log)?.is_some() == outcome.is_feasible() {
            agreements += 1;
        }
    }

    let set = SubsetMask::from_raw(full_bits(k + 1), m);
    oracle.reset();
    let base = set.complement();
    let entries = set
        .subsets()
        .map(|x| {
            let t = SubsetMask::from_raw(base.bits() | x.bits(), m);
            Ok((t, oracle.eval(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let certificate_queries = oracle.queries();
    let log = QueryLog::new(m, entries)?;
    let outcome = completion_feasible(&log)?;
    let certificate_witness_valid = match &outcome {
        Completion::Infeasible(w) => check_farkas_witness(w, &log),
        Completion::Feasible(_) => false,
    };
    let certificate_cross_check_agrees = wspace_feasible(&log)?.is_some() == outcome.is_feasible();

    Ok(NotesterReport {
        m,
        k,
        n,
        seed,
        trials,
        log_size,
        feasible,
        infeasible,
        cross_check_agreements: agreements,
        certificate_set: set,
        certificate_queries,
        certificate_feasible: outcome.is_feasible(),
        certificate_witness_valid,
        certificate_cross_check_agrees,
    })
}
