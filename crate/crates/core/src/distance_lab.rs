//! Constructions comparing W-distance with the usual (Hamming) distance to
//! coverage, and zero counts of symmetric multilinear polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::binomial::{factorial, BinomialTable};
use crate::completion::{completion_feasible, QueryLog};
use crate::error::{Error, Result};
use crate::function::DenseSetFunction;
use crate::rational::int;
use crate::sampling::{rng_from_seed, small_positive_rational};
use crate::subset::{check_dense, check_ground, SubsetMask};
use crate::wtransform::{inverse, w_distance, WCoefficients};

/// Largest ground set for which [`expand_symmetric`] builds a table.
pub const SYMMETRIC_EXPAND_MAX_M: usize = 20;

/// Largest ground set for the exhaustive distance search.
pub const EXACT_DISTANCE_MAX_M: usize = 3;

/// A set function that depends only on `|T|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFunction {
    m: usize,
    levels: Vec<BigRational>,
}

impl SymmetricFunction {
    /// `levels[i]` is the value on sets of size `i`; needs `m + 1` entries.
    pub fn new(m: usize, levels: Vec<BigRational>) -> Result<Self> {
        check_ground(m)?;
        if levels.len() != m + 1 {
            return Err(Error::Malformed(format!("expected {} levels, got {}", m + 1, levels.len())));
        }
        Ok(Self { m, levels })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn levels(&self) -> &[BigRational] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &BigRational {
        &self.levels[i]
    }
}

/// Coefficients of a symmetric function, `ŵ(j)` for `j = 1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricWCoefficients {
    m: usize,
    levels: Vec<BigRational>,
}

impl SymmetricWCoefficients {
    pub fn new(m: usize, levels: Vec<BigRational>) -> Result<Self> {
        check_ground(m)?;
        if levels.len() != m {
            return Err(Error::Malformed(format!("expected {m} coefficient levels, got {}", levels.len())));
        }
        Ok(Self { m, levels })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `ŵ(j)` for `1 ≤ j ≤ m`.
    pub fn level(&self, j: usize) -> &BigRational {
        &self.levels[j - 1]
    }

    pub fn levels(&self) -> &[BigRational] {
        &self.levels
    }
}

/// `ŵ(j) = Σ_i C(j, i) (−1)^{i+j+1} f̂(m − i)`.
pub fn symmetric_coefficients(f: &SymmetricFunction) -> SymmetricWCoefficients {
    let m = f.m;
    let binom = BinomialTable::new(m);
    let levels = (1..=m)
        .map(|j| {
            let mut acc = BigRational::zero();
            for i in 0..=j {
                let term = BigRational::from_integer(binom.get(j, i)) * &f.levels[m - i];
                if (i + j) % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    SymmetricWCoefficients { m, levels }
}

pub fn expand_symmetric(s: &SymmetricFunction) -> Result<DenseSetFunction> {
    check_dense(s.m, SYMMETRIC_EXPAND_MAX_M)?;
    let values = (0..1u32 << s.m)
        .map(|t| s.levels[t.count_ones() as usize].clone())
        .collect();
    DenseSetFunction::from_values(s.m, values)
}

/// Reads back the level values of a symmetric table.
pub fn symmetric_levels(f: &DenseSetFunction) -> Result<SymmetricFunction> {
    let m = f.m();
    let mut levels: Vec<Option<BigRational>> = vec![None; m + 1];
    for (t, v) in f.values().iter().enumerate() {
        let size = (t as u32).count_ones() as usize;
        match &levels[size] {
            None => levels[size] = Some(v.clone()),
            Some(seen) if seen != v => {
                return Err(Error::Malformed(format!(
                    "table is not symmetric: two sets of size {size} differ"
                )))
            }
            Some(_) => {}
        }
    }
    SymmetricFunction::new(m, levels.into_iter().map(|v| v.expect("every size occurs")).collect())
}

/// `f(T + i + j) − f(T + i) − f(T + j) + f(T)` for elements `i ≠ j` outside
/// `T` (1-based). Positive values violate submodularity.
pub fn square_value(f: &DenseSetFunction, t: SubsetMask, i: usize, j: usize) -> Result<BigRational> {
    let m = f.m();
    t.expect_ground(m)?;
    for e in [i, j] {
        if e == 0 || e > m {
            return Err(Error::InvalidElement { element: e, m });
        }
    }
    if i == j || t.contains(i) || t.contains(j) {
        return Err(Error::InvalidParameter(format!(
            "square needs distinct elements outside T, got i = {i}, j = {j}, T = {t}"
        )));
    }
    let (bi, bj, bt) = (1usize << (i - 1), 1usize << (j - 1), t.index());
    let v = f.values();
    Ok(&v[bt | bi | bj] - &v[bt | bi] - &v[bt | bj] + &v[bt])
}

/// Groups all sets into quadruples `{S, S+1, S+2, S+1+2}` with
/// `S ⊆ [m] \ {1, 2}` and returns (violating quadruples) / `2^m`. Each
/// violating quadruple needs at least one changed value, so this bounds the
/// distance to coverage from below.
pub fn quadruple_distance_lower_bound(f: &DenseSetFunction) -> Result<BigRational> {
    let m = f.m();
    if m < 2 {
        return Err(Error::InvalidParameter("quadruples need m ≥ 2".into()));
    }
    let mut violating = 0usize;
    for s in (0..1u32 << m).filter(|s| s & 0b11 == 0) {
        if square_value(f, SubsetMask::from_raw(s, m), 1, 2)?.is_positive() {
            violating += 1;
        }
    }
    Ok(BigRational::new(violating.into(), (1usize << m).into()))
}

/// Smallest fraction of the `2^m` values that must change to reach a
/// coverage function, by trying every set of kept values with the
/// completion LP. Only for `m ≤ 3`.
pub fn exact_distance_to_coverage(f: &DenseSetFunction) -> Result<BigRational> {
    let m = f.m();
    if m > EXACT_DISTANCE_MAX_M {
        return Err(Error::GroundSetTooLarge {
            m,
            limit: EXACT_DISTANCE_MAX_M,
        });
    }
    // f(∅) = 0 already holds, so only the nonempty values are in play.
    let nonempty = (1usize << m) - 1;
    let mut keep_sets: Vec<u32> = (0..1u32 << nonempty).collect();
    keep_sets.sort_by_key(|k| std::cmp::Reverse(k.count_ones()));
    for keep in keep_sets {
        let entries: Vec<_> = (0..nonempty)
            .filter(|b| keep >> b & 1 == 1)
            .map(|b| {
                let t = SubsetMask::from_raw(b as u32 + 1, m);
                (t, f.get(t).clone())
            })
            .collect();
        if entries.iter().any(|(_, v)| v.is_negative()) {
            continue;
        }
        if completion_feasible(&QueryLog::new(m, entries)?)?.is_feasible() {
            let changed = nonempty - keep.count_ones() as usize;
            return Ok(BigRational::new(changed.into(), (1usize << m).into()));
        }
    }
    unreachable!("the empty log always completes to zero")
}

/// Checks of the supermodular example: `w(S) = m` on singletons, `−1` on
/// pairs, `0` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WNearReport {
    pub m: usize,
    pub w_distance: BigRational,
    pub squares_checked: usize,
    /// Every square equals exactly one.
    pub squares_all_one: bool,
    pub monotone: bool,
    pub nonnegative: bool,
    pub quadruple_bound: BigRational,
}

pub fn build_wnear_ufar(m: usize) -> Result<(WCoefficients, DenseSetFunction, WNearReport)> {
    if !(2..=12).contains(&m) {
        return Err(Error::InvalidParameter(format!("need 2 ≤ m ≤ 12, got {m}")));
    }
    let w = WCoefficients::from_fn(m, |s| match s.len() {
        1 => int(m as i64),
        2 => int(-1),
        _ => BigRational::zero(),
    })?;
    let f = inverse(&w);

    let one = BigRational::one();
    let mut squares = 0;
    let mut all_one = true;
    for t in 0..1u32 << m {
        let ts = SubsetMask::from_raw(t, m);
        for i in 1..=m {
            for j in i + 1..=m {
                if ts.contains(i) || ts.contains(j) {
                    continue;
                }
                squares += 1;
                all_one &= square_value(&f, ts, i, j)? == one;
            }
        }
    }
    let v = f.values();
    let monotone = (0..1usize << m).all(|t| (0..m).all(|b| t >> b & 1 == 1 || v[t] <= v[t | 1 << b]));
    let nonnegative = v.iter().all(|x| !x.is_negative());
    let report = WNearReport {
        m,
        w_distance: w_distance(&w),
        squares_checked: squares,
        squares_all_one: all_one,
        monotone,
        nonnegative,
        quadruple_bound: quadruple_distance_lower_bound(&f)?,
    };
    Ok((w, f, report))
}

/// `α_i = Δ^i p(0)` from the values `p(0), p(1), …`, so that
/// `Σ_i α_i C(j, i) = p(j)` at every given point.
pub fn mahler_coefficients(values: &[BigRational]) -> Vec<BigRational> {
    let mut diffs = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !diffs.is_empty() {
        out.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `Σ_i α_i C(j, i)`.
pub fn mahler_eval(alpha: &[BigRational], j: usize) -> BigRational {
    let mut c = BigRational::one();
    let mut acc = BigRational::zero();
    for (i, a) in alpha.iter().enumerate() {
        if i > j {
            break;
        }
        acc += a * &c;
        // C(j, i+1) = C(j, i) (j − i) / (i + 1)
        c = c * int((j - i) as i64) / int(i as i64 + 1);
    }
    acc
}

/// Verification data for the symmetric perturbation `Δf` that moves the
/// base function (`N` on levels `≤ m/4` and on `[m]`, `−1` elsewhere) to a
/// coverage function while changing few values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFarReport {
    pub m: usize,
    pub k: usize,
    pub n: BigRational,
    /// Mahler coefficients of `h₁ + h₂`.
    pub alpha: Vec<BigRational>,
    /// `f̂` vanishes on `3m/8 ≤ i ≤ 5m/8`.
    pub band_zero: bool,
    /// `ŵ(j) ≥ 1` for `m/4 < j < m`.
    pub upper_levels_ok: bool,
    /// `ŵ(j) ≥ −N` for `j ≤ m/4` and `j = m`.
    pub lower_levels_ok: bool,
    /// `Σ_{i ∉ [3m/8, 5m/8]} C(m, i) / 2^m`.
    pub outside_band_fraction: BigRational,
    /// Fraction of sets on which `Δf` is actually nonzero.
    pub nonzero_fraction: BigRational,
    /// `ŵ` from the transform of `f̂` equals `(−1)^j (h₁(j) + h₂(j))`.
    pub wf_consistent: bool,
    /// Every level of base + `ŵ` is nonnegative.
    pub perturbed_is_coverage: bool,
    /// W-distance of the base function.
    pub base_w_distance: BigRational,
}

fn half_shift(j: usize, k: usize) -> BigRational {
    // j − k − 1/2
    BigRational::new(BigInt::from(2 * j as i64 - 2 * k as i64 - 1), BigInt::from(2))
}

fn sign(even: bool) -> BigRational {
    if even {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `4 (−1)^{5m/8} Π_{t=m/4+1}^{5m/8−1} (j − t − 1/2)`.
fn h1(m: usize, j: usize) -> BigRational {
    let mut acc = int(4) * sign((5 * m / 8).is_multiple_of(2));
    for t in m / 4 + 1..5 * m / 8 {
        acc *= half_shift(j, t);
    }
    acc
}

/// `(20 m! + 4) (−1)^{m−1} j (j−1) ⋯ (j − 5m/8) Π_{t=5m/8+1}^{m−2} (j − t − 1/2)`.
fn h2(m: usize, j: usize) -> BigRational {
    let lead = BigRational::from_integer(factorial(m as u64) * 20 + 4);
    let mut acc = lead * sign((m - 1).is_multiple_of(2));
    for r in 0..=5 * m / 8 {
        acc *= int(j as i64 - r as i64);
    }
    for t in 5 * m / 8 + 1..=m - 2 {
        acc *= half_shift(j, t);
    }
    acc
}

pub fn build_wfar_unear(m: usize) -> Result<(SymmetricFunction, SymmetricWCoefficients, BigRational, WFarReport)> {
    if m == 0 || !m.is_multiple_of(8) || m > 16 {
        return Err(Error::InvalidParameter(format!("m must be 8 or 16, got {m}")));
    }
    let k = m / 4;
    let (lo, hi) = (3 * m / 8, 5 * m / 8);
    let h1v: Vec<BigRational> = (0..=m).map(|j| h1(m, j)).collect();
    let h2v: Vec<BigRational> = (0..=m).map(|j| h2(m, j)).collect();
    let a1 = mahler_coefficients(&h1v);
    let a2 = mahler_coefficients(&h2v);
    let alpha: Vec<BigRational> = (0..=m)
        .map(|i| {
            if i < lo {
                a1[i].clone()
            } else if i > hi && i < m {
                a2[i].clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    // The pieces dropped above must vanish for the split to be exact.
    let split_exact = (lo..=m).all(|i| a1[i].is_zero()) && (0..=hi).chain([m]).all(|i| a2[i].is_zero());

    // α_i = (−1)^{i+1} f̂(m − i)
    let f_hat = SymmetricFunction::new(
        m,
        (0..=m)
            .map(|i| sign((m - i + 1).is_multiple_of(2)) * &alpha[m - i])
            .collect(),
    )?;
    let direct: Vec<BigRational> = (1..=m)
        .map(|j| sign(j % 2 == 0) * (&h1v[j] + &h2v[j]))
        .collect();
    let w_hat = SymmetricWCoefficients::new(m, direct)?;
    let via_transform = symmetric_coefficients(&f_hat);
    let wf_consistent = split_exact && via_transform == w_hat;

    let five_fact = BigRational::from_integer(factorial(m as u64) * 5);
    let n = std::cmp::max(five_fact, w_hat.level(m).abs());

    let band_zero = (lo..=hi).all(|i| f_hat.level(i).is_zero());
    let upper_levels_ok = (k + 1..m).all(|j| *w_hat.level(j) >= BigRational::one());
    let lower_levels_ok = (1..=k).chain([m]).all(|j| *w_hat.level(j) >= -n.clone());
    let perturbed_is_coverage = (1..=m).all(|j| {
        let base = if j <= k || j == m { n.clone() } else { -BigRational::one() };
        !(base + w_hat.level(j)).is_negative()
    });

    let binom = BinomialTable::new(m);
    let total = BigInt::one() << m;
    let outside: BigInt = (0..=m).filter(|i| *i < lo || *i > hi).map(|i| binom.get(m, i)).sum();
    let nonzero: BigInt = (0..=m)
        .filter(|i| !f_hat.level(*i).is_zero())
        .map(|i| binom.get(m, i))
        .sum();
    let negatives: BigInt = (k + 1..m).map(|j| binom.get(m, j)).sum();
    let base_w_distance = BigRational::new(negatives, total.clone() - 1);

    let report = WFarReport {
        m,
        k,
        n: n.clone(),
        alpha,
        band_zero,
        upper_levels_ok,
        lower_levels_ok,
        outside_band_fraction: BigRational::new(outside, total.clone()),
        nonzero_fraction: BigRational::new(nonzero, total),
        wf_consistent,
        perturbed_is_coverage,
        base_w_distance,
    };
    Ok((f_hat, w_hat, n, report))
}

/// Number of `i ∈ 0..=m` with `g(i) = Σ_j λ_j C(i, j) = 0`, where
/// `λ = lambda[0..=m]`. Requires `λ_j < 0` for all `j > k`.
pub fn symmetric_zero_count(lambda: &[BigRational], k: usize) -> Result<usize> {
    if lambda.is_empty() {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    if let Some((j, v)) = lambda.iter().enumerate().skip(k + 1).find(|(_, v)| !v.is_negative()) {
        return Err(Error::InvalidParameter(format!(
            "level {j} above k = {k} must be negative, got {v}"
        )));
    }
    let m = lambda.len() - 1;
    let binom = BinomialTable::new(m);
    let zeros = (0..=m)
        .filter(|&i| {
            let g: BigRational = (0..=i)
                .map(|j| &lambda[j] * BigRational::from_integer(binom.get(i, j)))
                .sum();
            g.is_zero()
        })
        .count();
    Ok(zeros)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    /// Draws whose head was solved to vanish at `k + 1` chosen points.
    pub forced_draws: usize,
    pub max_zeros: usize,
    /// Draws with more than `k + 1` zeros.
    pub violations: usize,
    /// `histogram[z]` draws had exactly `z` zeros.
    pub histogram: Vec<usize>,
}

/// Random `λ` with a negative tail above `k`. Odd-numbered draws pick the
/// head `λ_0..λ_k` so that `g` vanishes at `k + 1` random points, the rest
/// use small random integers.
pub fn symmetric_conjecture_trials(m: usize, k: usize, trials: usize, seed: u64) -> Result<ConjectureReport> {
    if m == 0 || m > SYMMETRIC_EXPAND_MAX_M {
        return Err(Error::InvalidParameter(format!("need 1 ≤ m ≤ {SYMMETRIC_EXPAND_MAX_M}, got {m}")));
    }
    if k > m {
        return Err(Error::InvalidParameter(format!("need k ≤ m, got k = {k}, m = {m}")));
    }
    let binom = BinomialTable::new(m);
    let mut rng = rng_from_seed(seed);
    let mut histogram = vec![0; m + 2];
    let mut forced_draws = 0;
    for trial in 0..trials {
        let mut lambda = vec![BigRational::zero(); m + 1];
        for l in lambda.iter_mut().skip(k + 1) {
            *l = -small_positive_rational(&mut rng);
        }
        if trial % 2 == 1 {
            forced_draws += 1;
            let points = rand::seq::index::sample(&mut rng, m + 1, k + 1).into_vec();
            let head = solve_head(&binom, &lambda, k, &points);
            lambda[..=k].clone_from_slice(&head);
        } else {
            for l in lambda.iter_mut().take(k + 1) {
                *l = int(rng.gen_range(-20..=20));
            }
        }
        let zeros = symmetric_zero_count(&lambda, k)?;
        histogram[zeros] += 1;
    }
    let max_zeros = histogram.iter().rposition(|c| *c > 0).unwrap_or(0);
    let violations = histogram.iter().skip(k + 2).sum();
    Ok(ConjectureReport {
        m,
        k,
        seed,
        trials,
        forced_draws,
        max_zeros,
        violations,
        histogram,
    })
}

/// Solves `Σ_{j≤k} λ_j C(i, j) = −Σ_{j>k} λ_j C(i, j)` at the given points.
/// The matrix `C(i_r, j)` is invertible for distinct points because the
/// binomials `C(x, 0..=k)` are a basis of polynomials of degree `≤ k`.
fn solve_head(binom: &BinomialTable, lambda: &[BigRational], k: usize, points: &[usize]) -> Vec<BigRational> {
    let n = k + 1;
    let mut a: Vec<Vec<BigRational>> = points
        .iter()
        .map(|&i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| BigRational::from_integer(binom.get(i, j))).collect();
            let tail: BigRational = (n..lambda.len())
                .map(|j| BigRational::from_integer(binom.get(i, j)) * &lambda[j])
                .sum();
            row.push(-tail);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("binomial interpolation matrix is nonsingular");
        a.swap(col, pivot);
        let inv = BigRational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &factor * p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::CoverageInstance;
    use crate::rational::ratio;
    use crate::wtransform::forward;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn mahler_examples() {
        assert_eq!(mahler_coefficients(&ints(&[0, 1, 2, 3, 4])), ints(&[0, 1, 0, 0, 0]));
        assert_eq!(mahler_coefficients(&ints(&[0, 1, 4, 9, 16])), ints(&[0, 1, 2, 0, 0]));
        assert_eq!(mahler_coefficients(&ints(&[7, 7, 7])), ints(&[7, 0, 0]));
        let a = mahler_coefficients(&ints(&[0, 1, 4, 9, 16]));
        for j in 0..5 {
            assert_eq!(mahler_eval(&a, j), int((j * j) as i64));
        }
    }

    #[test]
    fn wnear_small_cases() {
        let (w, f, r) = build_wnear_ufar(3).unwrap();
        assert_eq!(f.get(SubsetMask::from_elements(&[1], 3).unwrap()), &int(1));
        assert_eq!(r.w_distance, ratio(3, 7));
        assert!(r.squares_all_one && r.monotone && r.nonnegative);
        assert_eq!(r.squares_checked, 3 * 2);
        assert_eq!(r.quadruple_bound, ratio(1, 4));
        assert_eq!(w.negatives().len(), 3);
    }

    #[test]
    fn square_examples() {
        let zero = DenseSetFunction::zeros(3).unwrap();
        let t = SubsetMask::empty(3).unwrap();
        assert_eq!(square_value(&zero, t, 1, 2).unwrap(), int(0));
        assert!(square_value(&zero, t, 1, 1).is_err());
        let t3 = SubsetMask::from_elements(&[3], 3).unwrap();
        assert!(square_value(&zero, t3, 1, 3).is_err());
        assert!(square_value(&zero, t, 1, 4).is_err());

        let inst = CoverageInstance::new(
            3,
            [
                (SubsetMask::from_elements(&[1, 2], 3).unwrap(), int(2)),
                (SubsetMask::from_elements(&[3], 3).unwrap(), int(1)),
            ],
        )
        .unwrap();
        let f = DenseSetFunction::tabulate(&inst).unwrap();
        assert_eq!(square_value(&f, t, 1, 2).unwrap(), int(-2));
        assert_eq!(quadruple_distance_lower_bound(&f).unwrap(), int(0));
    }

    #[test]
    fn wfar_at_eight() {
        let (f_hat, w_hat, n, r) = build_wfar_unear(8).unwrap();
        assert_eq!(w_hat.level(3), &int(3));
        assert_eq!(w_hat.level(4), &int(1));
        assert_eq!(w_hat.level(5), &int(3));
        assert!(r.band_zero && r.upper_levels_ok && r.lower_levels_ok);
        assert!(r.wf_consistent && r.perturbed_is_coverage);
        assert_eq!(r.outside_band_fraction, ratio(74, 256));
        // f̂(0) = −α_m = 0, so the empty set drops out of the count.
        assert_eq!(f_hat.level(0), &int(0));
        assert_eq!(r.nonzero_fraction, ratio(73, 256));
        assert!(n >= BigRational::from_integer(factorial(8) * 5));

        let dense = forward(&expand_symmetric(&f_hat).unwrap()).unwrap();
        for (s, v) in dense.iter() {
            assert_eq!(v, w_hat.level(s.len()));
        }
    }

    #[test]
    fn wfar_rejects_bad_m() {
        for m in [0, 4, 12, 24] {
            assert!(build_wfar_unear(m).is_err());
        }
    }

    #[test]
    fn zero_count_examples() {
        assert_eq!(symmetric_zero_count(&ints(&[2, 0, -1, -1]), 1).unwrap(), 0);
        assert_eq!(symmetric_zero_count(&ints(&[-1, -1, -1]), 0).unwrap(), 0);
        // g(0) = λ_0 = 0
        assert_eq!(symmetric_zero_count(&ints(&[0, 3, -1, -1]), 1).unwrap(), 1);
        assert!(symmetric_zero_count(&ints(&[0, 3, 1, -1]), 1).is_err());
    }

    #[test]
    fn forced_heads_hit_their_points() {
        let binom = BinomialTable::new(10);
        let mut lambda = vec![BigRational::zero(); 11];
        for l in lambda.iter_mut().skip(3) {
            *l = int(-2);
        }
        let head = solve_head(&binom, &lambda, 2, &[1, 4, 9]);
        lambda[..3].clone_from_slice(&head);
        for i in [1, 4, 9] {
            assert!(mahler_eval(&lambda, i).is_zero());
        }
        assert_eq!(symmetric_zero_count(&lambda, 2).unwrap(), 3);
    }

    #[test]
    fn conjecture_harness_runs() {
        let r = symmetric_conjecture_trials(12, 3, 40, 1).unwrap();
        assert_eq!(r.forced_draws, 20);
        assert_eq!(r.violations, 0);
        assert_eq!(r.max_zeros, 4);
        assert_eq!(r.histogram.iter().sum::<usize>(), 40);
    }

    #[test]
    fn symmetric_round_trip() {
        let s = SymmetricFunction::new(2, ints(&[0, 1, 2])).unwrap();
        let f = expand_symmetric(&s).unwrap();
        assert_eq!(f.values(), &ints(&[0, 1, 1, 2])[..]);
        assert_eq!(symmetric_levels(&f).unwrap(), s);
        assert!(expand_symmetric(&SymmetricFunction::new(2, ints(&[1, 1, 2])).unwrap()).is_err());
    }

    #[test]
    fn exact_distance_small() {
        let (_, f, _) = build_wnear_ufar(2).unwrap();
        // One changed value among four repairs the single square.
        assert_eq!(exact_distance_to_coverage(&f).unwrap(), ratio(1, 4));
        let zero = DenseSetFunction::zeros(3).unwrap();
        assert_eq!(exact_distance_to_coverage(&zero).unwrap(), int(0));
        assert!(exact_distance_to_coverage(&DenseSetFunction::zeros(4).unwrap()).is_err());
    }
}
