//! Seeded randomness.
//!
//! All randomized procedures draw from `ChaCha8Rng::seed_from_u64(seed)`
//! (`rand_chacha` 0.3; the `u64` seed is expanded with PCG32 as specified by
//! `rand_core::SeedableRng::seed_from_u64`). ChaCha output is fixed by its
//! specification, so a seed reproduces the same stream on every platform.
//!
//! A uniform subset of `[m]` takes one `u32` from the stream and keeps its low
//! `m` bits: element `i` is included iff bit `i - 1` is set, which makes each
//! inclusion an independent fair coin.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::instance::CoverageInstance;
use crate::subset::{check_ground, full_bits, SubsetMask};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_subset(rng: &mut impl RngCore, m: usize) -> SubsetMask {
    SubsetMask::from_raw(rng.next_u32() & full_bits(m), m)
}

/// `count` distinct sets drawn uniformly without replacement from all `2^m`.
pub fn distinct_subsets(rng: &mut impl RngCore, m: usize, count: usize) -> Vec<SubsetMask> {
    let total = 1usize << m;
    index::sample(rng, total, count.min(total))
        .into_iter()
        .map(|b| SubsetMask::from_raw(b as u32, m))
        .collect()
}

/// `count` distinct nonempty sets, uniformly without replacement.
pub fn distinct_nonempty_subsets(rng: &mut impl RngCore, m: usize, count: usize) -> Vec<SubsetMask> {
    let total = (1usize << m) - 1;
    index::sample(rng, total, count.min(total))
        .into_iter()
        .map(|b| SubsetMask::from_raw(b as u32 + 1, m))
        .collect()
}

/// Positive rational `p/q` with `1 ≤ p ≤ 20`, `1 ≤ q ≤ 6`.
pub fn small_positive_rational(rng: &mut impl RngCore) -> BigRational {
    let p: i64 = rng.gen_range(1..=20);
    let q: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A coverage instance with `n` distinct nonempty patterns (capped at
/// `2^m - 1`) and small positive rational weights.
pub fn random_instance(rng: &mut impl RngCore, m: usize, n: usize) -> Result<CoverageInstance> {
    check_ground(m)?;
    let sets = distinct_nonempty_subsets(rng, m, n);
    let elements: Vec<_> = sets
        .into_iter()
        .map(|s| (s, small_positive_rational(rng)))
        .collect();
    CoverageInstance::new(m, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = (0..20).map({
            let mut r = rng_from_seed(7);
            move |_| uniform_subset(&mut r, 10).bits()
        }).collect();
        let b: Vec<_> = (0..20).map({
            let mut r = rng_from_seed(7);
            move |_| uniform_subset(&mut r, 10).bits()
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn subsets_stay_in_range() {
        let mut r = rng_from_seed(1);
        for _ in 0..1000 {
            assert!(uniform_subset(&mut r, 5).bits() < 32);
        }
    }

    #[test]
    fn random_instances_have_requested_support() {
        let mut r = rng_from_seed(3);
        let inst = random_instance(&mut r, 6, 20).unwrap();
        assert_eq!(inst.len(), 20);
        let capped = random_instance(&mut r, 2, 10).unwrap();
        assert_eq!(capped.len(), 3);
    }

    #[test]
    fn distinct_draws_are_distinct() {
        let mut r = rng_from_seed(11);
        let mut v = distinct_subsets(&mut r, 4, 16);
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 16);
    }
}
