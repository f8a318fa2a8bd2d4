//! Reconstruction of succinct coverage functions by partition refinement.
//!
//! At level `k` the power set is split into parts `F(x) = {S : S ∩ [k] = x}`
//! for prefixes `x ⊆ [k]`, and each live part carries its total weight
//! `Σ_{S ∈ F(x)} w(S)`. Parts of weight zero hold only zero coefficients (for
//! a coverage function) and are dropped. Refining on element `k + 1` costs
//! two queries per live part:
//!
//! ```text
//! F⁰ = f([k] \ x),   F¹ = f(([k] \ x) ∪ {k+1})
//! F¹ − F⁰ = Σ_{S ∩ [k] ⊆ x, k+1 ∈ S} w(S)
//! ```
//!
//! so `Δ_x = w(F(x ⊕ 1)) = F¹ − F⁰ − Σ_{y ⊊ x} Δ_y`. The correction runs over
//! live prefixes that are proper subsets of `x`; processing parts by
//! increasing popcount makes those available first. Dead prefixes contribute
//! nothing because their parts hold zero weight.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{eval_instance, CoverageInstance};
use crate::oracle::CountingOracle;
use crate::rational::ceil_to_usize;
use crate::sampling::{rng_from_seed, uniform_subset};
use crate::subset::{full_bits, SubsetMask};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionNode {
    /// Prefix `x ⊆ [k]`, as a mask over the full ground set.
    pub prefix: SubsetMask,
    /// `w(F(x))`.
    pub weight: BigRational,
}

/// Which earlier parts are subtracted when computing `Δ_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CorrectionRule {
    /// Live prefixes `y ⊊ x`. This is the correct rule.
    #[default]
    SubsetPredecessors,
    /// Every part processed before `x`, including incomparable prefixes.
    /// Kept only to demonstrate that it miscounts.
    OrderPredecessors,
}

/// Refines every live part at level `k` on element `k + 1`.
///
/// Output is sorted by prefix bit pattern and contains only positive parts.
pub fn refine_level(o: &CountingOracle, k: usize, live: &[PartitionNode]) -> Result<Vec<PartitionNode>> {
    refine_level_with(o, k, live, CorrectionRule::SubsetPredecessors)
}

pub fn refine_level_with(
    o: &CountingOracle,
    k: usize,
    live: &[PartitionNode],
    rule: CorrectionRule,
) -> Result<Vec<PartitionNode>> {
    let m = o.m();
    if k >= m {
        return Err(Error::InvalidParameter(format!("level {k} must be below m = {m}")));
    }
    let level_bits = full_bits(k);
    for node in live {
        node.prefix.expect_ground(m)?;
        if node.prefix.bits() & !level_bits != 0 {
            return Err(Error::InvalidParameter(format!(
                "prefix {} is not contained in the first {k} elements",
                node.prefix
            )));
        }
        if !node.weight.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "live part {} has non-positive weight {}",
                node.prefix, node.weight
            )));
        }
    }

    let mut order: Vec<&PartitionNode> = live.iter().collect();
    order.sort_by_key(|n| (n.prefix.len(), n.prefix.bits()));
    if order.windows(2).any(|w| w[0].prefix == w[1].prefix) {
        return Err(Error::InvalidParameter("live prefixes must be distinct".into()));
    }

    let next = 1u32 << k;
    let mut deltas: Vec<(u32, BigRational)> = Vec::with_capacity(order.len());
    let mut out = Vec::with_capacity(2 * order.len());
    for node in order {
        let x = node.prefix.bits();
        let rest = level_bits & !x;
        let f0 = o.eval(SubsetMask::from_raw(rest, m))?;
        let f1 = o.eval(SubsetMask::from_raw(rest | next, m))?;
        let correction: BigRational = deltas
            .iter()
            .filter(|(y, _)| match rule {
                CorrectionRule::SubsetPredecessors => y & !x == 0 && *y != x,
                CorrectionRule::OrderPredecessors => true,
            })
            .map(|(_, d)| d)
            .sum();
        let delta = f1 - f0 - correction;
        let stay = &node.weight - &delta;
        for (bits, weight) in [(x | next, delta.clone()), (x, stay)] {
            if weight.is_negative() {
                return Err(Error::NegativeWeight {
                    level: k + 1,
                    prefix: SubsetMask::from_raw(bits, m),
                    weight,
                });
            }
            if !weight.is_zero() {
                out.push(PartitionNode {
                    prefix: SubsetMask::from_raw(bits, m),
                    weight,
                });
            }
        }
        deltas.push((x, delta));
    }
    out.sort_by_key(|n| n.prefix.bits());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub instance: CoverageInstance,
    /// Oracle queries spent by this run.
    pub queries_used: u64,
    /// Live-part counts after levels `0, 1, ..., m`.
    pub levels: Vec<usize>,
}

/// Recovers the support and weights of a coverage function with at most
/// `max_support` positive coefficients, using at most
/// `1 + 2 Σ_{k<m} min(2^k, n) ≤ 2mn + 1` queries.
pub fn recover(o: &CountingOracle, max_support: usize) -> Result<ReconstructionReport> {
    recover_with(o, max_support, CorrectionRule::SubsetPredecessors)
}

pub fn recover_with(o: &CountingOracle, max_support: usize, rule: CorrectionRule) -> Result<ReconstructionReport> {
    if max_support == 0 {
        return Err(Error::InvalidParameter("support bound must be at least 1".into()));
    }
    let m = o.m();
    let start = o.queries();
    let full = SubsetMask::from_raw(full_bits(m), m);
    let root = o.eval(full)?;
    if root.is_negative() {
        return Err(Error::NegativeWeight {
            level: 0,
            prefix: SubsetMask::from_raw(0, m),
            weight: root,
        });
    }
    let mut live = Vec::new();
    if !root.is_zero() {
        live.push(PartitionNode {
            prefix: SubsetMask::from_raw(0, m),
            weight: root,
        });
    }
    let mut levels = vec![live.len()];
    for k in 0..m {
        live = refine_level_with(o, k, &live, rule)?;
        levels.push(live.len());
        if live.len() > max_support {
            return Err(Error::SupportExceeded {
                level: k + 1,
                live: live.len(),
                limit: max_support,
            });
        }
    }
    // The weight left on the empty prefix telescopes to f(∅).
    if let Some(residual) = live.iter().find(|n| n.prefix.is_empty()) {
        return Err(Error::ResidualWeight {
            weight: residual.weight.clone(),
        });
    }
    let instance = CoverageInstance::new(m, live.into_iter().map(|n| (n.prefix, n.weight)))?;
    Ok(ReconstructionReport {
        instance,
        queries_used: o.queries() - start,
        levels,
    })
}

/// Why the tester said no.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NegativeWeight {
        level: usize,
        prefix: SubsetMask,
        weight: BigRational,
    },
    SupportExceeded {
        level: usize,
        live: usize,
        limit: usize,
    },
    /// Weight left on the empty set after the last level.
    ResidualWeight { weight: BigRational },
    /// A sampled set where the oracle disagrees with the reconstruction.
    Mismatch {
        set: SubsetMask,
        expected: BigRational,
        got: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TestVerdict {
    Yes,
    No(Rejection),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterOutcome {
    pub verdict: TestVerdict,
    pub report: Option<ReconstructionReport>,
    /// Planned number of random spot checks, `⌈2/ε⌉`.
    pub samples: usize,
    /// Spot checks actually made before a verdict.
    pub samples_checked: usize,
}

pub fn sample_count(epsilon: &BigRational) -> Result<usize> {
    if !epsilon.is_positive() || *epsilon > BigRational::from_integer(1.into()) {
        return Err(Error::InvalidEpsilon(epsilon.clone()));
    }
    let two = BigRational::from_integer(2.into());
    ceil_to_usize(&(two / epsilon)).ok_or_else(|| Error::InvalidEpsilon(epsilon.clone()))
}

/// Tests for coverage with support at most `n`.
///
/// Coverage functions with support `≤ n` always pass. A function that is
/// `ε`-far from every such function fails with probability at least
/// `1 − (1 − ε)^s ≥ 1 − e^{-2}` over the `s = ⌈2/ε⌉` uniform spot checks.
pub fn test_coverage(o: &CountingOracle, n: usize, epsilon: &BigRational, seed: u64) -> Result<TesterOutcome> {
    let samples = sample_count(epsilon)?;
    let report = match recover(o, n) {
        Ok(r) => r,
        Err(Error::NegativeWeight { level, prefix, weight }) => {
            return Ok(TesterOutcome {
                verdict: TestVerdict::No(Rejection::NegativeWeight { level, prefix, weight }),
                report: None,
                samples,
                samples_checked: 0,
            })
        }
        Err(Error::SupportExceeded { level, live, limit }) => {
            return Ok(TesterOutcome {
                verdict: TestVerdict::No(Rejection::SupportExceeded { level, live, limit }),
                report: None,
                samples,
                samples_checked: 0,
            })
        }
        Err(Error::ResidualWeight { weight }) => {
            return Ok(TesterOutcome {
                verdict: TestVerdict::No(Rejection::ResidualWeight { weight }),
                report: None,
                samples,
                samples_checked: 0,
            })
        }
        Err(e) => return Err(e),
    };
    let mut rng = rng_from_seed(seed);
    for checked in 1..=samples {
        let t = uniform_subset(&mut rng, o.m());
        let expected = eval_instance(&report.instance, t)?;
        let got = o.eval(t)?;
        if expected != got {
            return Ok(TesterOutcome {
                verdict: TestVerdict::No(Rejection::Mismatch { set: t, expected, got }),
                report: Some(report),
                samples,
                samples_checked: checked,
            });
        }
    }
    Ok(TesterOutcome {
        verdict: TestVerdict::Yes,
        report: Some(report),
        samples,
        samples_checked: samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{DenseSetFunction, SetFunction};
    use crate::rational::{int, ratio};

    fn mask(e: &[usize], m: usize) -> SubsetMask {
        SubsetMask::from_elements(e, m).unwrap()
    }

    fn node(e: &[usize], m: usize, w: BigRational) -> PartitionNode {
        PartitionNode {
            prefix: mask(e, m),
            weight: w,
        }
    }

    /// w({1}) = a, w({2}) = b, w({1,2}) = c.
    fn abc_oracle(a: i64, b: i64, c: i64) -> CountingOracle {
        let inst = CoverageInstance::new(
            2,
            [(mask(&[1], 2), int(a)), (mask(&[2], 2), int(b)), (mask(&[1, 2], 2), int(c))],
        )
        .unwrap();
        CountingOracle::new(inst)
    }

    #[test]
    fn first_level_split() {
        let o = abc_oracle(2, 3, 5);
        let out = refine_level(&o, 0, &[node(&[], 2, int(10))]).unwrap();
        // prefix (0) keeps b, prefix (1) gets a + c
        assert_eq!(out, vec![node(&[], 2, int(3)), node(&[1], 2, int(7))]);
        assert_eq!(o.queries(), 2);
    }

    #[test]
    fn second_level_split() {
        let o = abc_oracle(2, 3, 5);
        let out = refine_level(&o, 1, &[node(&[], 2, int(3)), node(&[1], 2, int(7))]).unwrap();
        assert_eq!(
            out,
            vec![node(&[1], 2, int(2)), node(&[2], 2, int(3)), node(&[1, 2], 2, int(5))]
        );
        assert_eq!(o.queries(), 4);
    }

    #[test]
    fn empty_live_list_costs_nothing() {
        let o = abc_oracle(1, 1, 1);
        assert!(refine_level(&o, 0, &[]).unwrap().is_empty());
        assert_eq!(o.queries(), 0);
    }

    #[test]
    fn bad_inputs_rejected() {
        let o = abc_oracle(1, 1, 1);
        assert!(refine_level(&o, 2, &[]).is_err());
        assert!(refine_level(&o, 0, &[node(&[1], 2, int(1))]).is_err());
        assert!(refine_level(&o, 0, &[node(&[], 2, int(0))]).is_err());
        assert!(refine_level(&o, 1, &[node(&[], 2, int(1)), node(&[], 2, int(2))]).is_err());
    }

    #[test]
    fn recovers_two_set_system() {
        let inst = CoverageInstance::new(2, [(mask(&[1, 2], 2), int(2)), (mask(&[2], 2), int(3))]).unwrap();
        let o = CountingOracle::new(inst.clone());
        let r = recover(&o, 2).unwrap();
        assert_eq!(r.instance, inst);
        assert!(r.queries_used <= 9);
        assert_eq!(r.queries_used, o.queries());
    }

    #[test]
    fn zero_oracle_costs_one_query() {
        let o = CountingOracle::new(DenseSetFunction::zeros(5).unwrap());
        let r = recover(&o, 1).unwrap();
        assert!(r.instance.is_empty());
        assert_eq!(r.queries_used, 1);
        assert_eq!(r.levels, vec![0; 6]);
    }

    #[test]
    fn support_bound_enforced() {
        let o = abc_oracle(1, 1, 1);
        assert!(matches!(recover(&o, 2), Err(Error::SupportExceeded { limit: 2, .. })));
        assert!(recover(&o, 0).is_err());
    }

    #[test]
    fn superadditive_function_goes_negative() {
        // w({1,2}) = -1
        let f = DenseSetFunction::from_values(2, vec![int(0), int(1), int(1), int(3)]).unwrap();
        let o = CountingOracle::new(f);
        assert!(matches!(recover(&o, 4), Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn order_predecessor_rule_miscounts_incomparable_prefixes() {
        // Level 2 holds the incomparable prefixes {1} and {2}.
        let inst = CoverageInstance::new(
            3,
            [(mask(&[1, 3], 3), int(1)), (mask(&[2], 3), int(2)), (mask(&[2, 3], 3), int(5))],
        )
        .unwrap();
        let good = recover(&CountingOracle::new(inst.clone()), 3).unwrap();
        assert_eq!(good.instance, inst);
        let bad = recover_with(&CountingOracle::new(inst.clone()), 3, CorrectionRule::OrderPredecessors).unwrap();
        assert_ne!(bad.instance, inst);
        assert_eq!(bad.instance.weight_of(mask(&[2, 3], 3)), Some(&int(4)));
    }

    struct Shifted;

    impl SetFunction for Shifted {
        fn ground_size(&self) -> usize {
            2
        }

        fn value(&self, t: SubsetMask) -> Result<BigRational> {
            Ok(int(1 + t.len() as i64))
        }
    }

    #[test]
    fn leftover_weight_on_empty_set_is_rejected() {
        // The ∅-prefix chain telescopes to f(∅), so only an oracle with
        // f(∅) ≠ 0 leaves weight there.
        let o = CountingOracle::new(Shifted);
        assert!(matches!(recover(&o, 4), Err(Error::ResidualWeight { weight }) if weight == int(1)));
    }

    #[test]
    fn sample_counts() {
        assert_eq!(sample_count(&int(1)).unwrap(), 2);
        assert_eq!(sample_count(&ratio(1, 4)).unwrap(), 8);
        assert_eq!(sample_count(&ratio(1, 3)).unwrap(), 6);
        assert_eq!(sample_count(&ratio(2, 5)).unwrap(), 5);
        assert!(sample_count(&int(0)).is_err());
        assert!(sample_count(&ratio(3, 2)).is_err());
    }

    #[test]
    fn tester_accepts_coverage() {
        let o = abc_oracle(1, 2, 3);
        let out = test_coverage(&o, 3, &int(1), 5).unwrap();
        assert_eq!(out.verdict, TestVerdict::Yes);
        assert_eq!(out.samples, 2);
    }

    #[test]
    fn tester_catches_top_perturbation() {
        // coverage table with f([m]) bumped by one
        let inst = CoverageInstance::new(3, [(mask(&[1], 3), int(2)), (mask(&[2, 3], 3), int(1))]).unwrap();
        let mut f = DenseSetFunction::tabulate(&inst).unwrap();
        let full = SubsetMask::full(3).unwrap();
        let bumped = f.get(full) + int(1);
        f.set(full, bumped).unwrap();
        let o = CountingOracle::new(f);
        let out = test_coverage(&o, 2, &ratio(1, 8), 1).unwrap();
        assert!(matches!(out.verdict, TestVerdict::No(_)));
    }
}
