//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, RngCore};
use wcover::adversarial::{extract_certificate, fstar_eval, fstar_wdistance, verify_certificate, FStarParams};
use wcover::binomial::BinomialTable;
use wcover::completion::notester_experiment;
use wcover::distance_lab::{build_wfar_unear, build_wnear_ufar, expand_symmetric, symmetric_conjecture_trials};
use wcover::rational::{int, ratio, BigRational};
use wcover::reconstruct::{recover, recover_with, test_coverage, CorrectionRule, TestVerdict};
use wcover::sampling::{distinct_nonempty_subsets, random_instance, rng_from_seed, small_positive_rational};
use wcover::wtransform::{forward, inverse, is_coverage, verdict_from_coefficients, CoverageVerdict};
use wcover::{CountingOracle, CoverageInstance, DenseSetFunction, Error, SubsetMask, WCoefficients};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn signed_rational(rng: &mut impl RngCore) -> BigRational {
    match rng.gen_range(0..5) {
        0 => BigRational::zero(),
        1 | 2 => small_positive_rational(rng),
        _ => -small_positive_rational(rng),
    }
}

fn mask(e: &[usize], m: usize) -> SubsetMask {
    SubsetMask::from_elements(e, m).unwrap()
}

fn transform_round_trip() -> Outcome {
    let mut rng = rng_from_seed(101);
    for i in 0..100 {
        let m = 1 + i % 10;
        let mut values: Vec<BigRational> = (0..1usize << m).map(|_| signed_rational(&mut rng)).collect();
        values[0] = BigRational::zero();
        let f = DenseSetFunction::from_values(m, values).unwrap();
        let w = forward(&f).unwrap();
        ensure(inverse(&w) == f, || format!("inverse(forward(f)) != f at trial {i}, m = {m}"))?;

        let w2 = WCoefficients::from_fn(m, |_| signed_rational(&mut rng)).unwrap();
        ensure(forward(&inverse(&w2)).unwrap() == w2, || {
            format!("forward(inverse(w)) != w at trial {i}, m = {m}")
        })?;
    }
    Ok("100 tables and 100 coefficient vectors, m = 1..10".into())
}

fn characterization() -> Outcome {
    let mut rng = rng_from_seed(202);
    let mut flips = 0;
    for i in 0..100 {
        let m = 1 + i % 10;
        let n = rng.gen_range(1..=20);
        let inst = random_instance(&mut rng, m, n).unwrap();
        let f = DenseSetFunction::tabulate(&inst).unwrap();
        match is_coverage(&f).unwrap() {
            CoverageVerdict::Coverage(found) => ensure(found == inst, || format!("support mismatch at trial {i}"))?,
            other => return Err(format!("coverage instance rejected at trial {i}: {other:?}")),
        }
        let w = forward(&f).unwrap();
        for e in inst.elements() {
            let mut negated = w.clone();
            negated.set(e.membership, -e.weight.clone()).unwrap();
            let g = inverse(&negated);
            match verdict_from_coefficients(&forward(&g).unwrap()) {
                CoverageVerdict::NotCoverage { set, value } => ensure(set == e.membership && value == -e.weight.clone(), || {
                    format!("wrong witness {set} at trial {i}")
                })?,
                CoverageVerdict::Coverage(_) => return Err(format!("negated weight not detected at trial {i}")),
            }
            flips += 1;
        }
    }
    Ok(format!("100 instances recovered exactly; {flips} single-weight negations all flipped with the negated set as witness"))
}

fn reconstruction() -> Outcome {
    let mut rng = rng_from_seed(303);
    let mut worst = 0f64;
    for i in 0..100 {
        let m = 1 + i % 16;
        let n = rng.gen_range(1..=50usize).min((1 << m) - 1);
        let inst = random_instance(&mut rng, m, n).unwrap();
        let o = CountingOracle::new(inst.clone());
        let r = recover(&o, n).map_err(|e| format!("trial {i}: {e}"))?;
        ensure(r.instance == inst, || format!("instance mismatch at trial {i}, m = {m}"))?;
        let bound = 2 * m as u64 * n as u64 + 1;
        ensure(o.queries() <= bound, || format!("{} queries > {bound} at trial {i}", o.queries()))?;
        worst = worst.max(o.queries() as f64 / bound as f64);
    }
    Ok(format!("100 instances, m up to 16, n up to 50; max queries/(2mn+1) = {worst:.3}"))
}

fn refine_counterexample() -> Outcome {
    let m = 3;
    let inst = CoverageInstance::new(
        m,
        [(mask(&[1, 3], m), int(1)), (mask(&[2], m), int(2)), (mask(&[2, 3], m), int(5))],
    )
    .unwrap();
    let brute = match verdict_from_coefficients(&forward(&DenseSetFunction::tabulate(&inst).unwrap()).unwrap()) {
        CoverageVerdict::Coverage(i) => i,
        _ => return Err("brute force rejected a coverage instance".into()),
    };
    let subset_rule = recover(&CountingOracle::new(inst.clone()), 3).map_err(|e| e.to_string())?;
    ensure(subset_rule.instance == brute, || "subset-predecessor rule disagrees with brute force".into())?;
    let order_rule = recover_with(&CountingOracle::new(inst), 3, CorrectionRule::OrderPredecessors);
    match order_rule {
        Ok(r) if r.instance != brute => Ok(format!(
            "order rule gives {{2,3}} weight {}, subset rule and brute force give 5",
            r.instance.weight_of(mask(&[2, 3], m)).map_or("none".into(), |w| w.to_string())
        )),
        Err(e) => Ok(format!("order rule fails ({e}), subset rule matches brute force")),
        Ok(_) => Err("order rule unexpectedly correct".into()),
    }
}

fn fstar_equivalence() -> Outcome {
    let mut checked = 0;
    for m in 2..=10 {
        for k in 0..m {
            for n in [int(3), ratio(7, 2)] {
                let p = FStarParams::with_n(m, k, n).unwrap();
                let f = inverse(&p.coefficients().unwrap());
                for b in 0..1u64 << m {
                    let t = SubsetMask::new(b, m).unwrap();
                    ensure(&fstar_eval(&p, t).unwrap() == f.get(t), || format!("mismatch m={m} k={k} T={t}"))?;
                    checked += 1;
                }
            }
        }
    }
    let d = fstar_wdistance(&FStarParams::with_n(4, 1, int(25)).unwrap());
    ensure(d == ratio(11, 15), || format!("W-distance of f*(4,1) is {d}"))?;
    Ok(format!("{checked} values agree; W-distance(m=4, k=1) = 11/15"))
}

fn certificates() -> Outcome {
    let mut certs = 0;
    for m in 2..=8 {
        for k in 0..m {
            let o = CountingOracle::new(FStarParams::with_n(m, k, int(9)).unwrap());
            let s = SubsetMask::new((1u64 << (k + 1)) - 1, m).unwrap();
            let c = extract_certificate(&o, s).map_err(|e| e.to_string())?;
            ensure(o.queries() == 1 << (k + 1), || format!("{} queries for m={m} k={k}", o.queries()))?;
            ensure(verify_certificate(&c), || format!("certificate fails to verify m={m} k={k}"))?;
            certs += 1;
        }
    }
    let mut rng = rng_from_seed(606);
    let mut probes = 0;
    for m in 1..=6 {
        for _ in 0..5 {
            let n = rng.gen_range(1..=(1usize << m) - 1);
            let o = CountingOracle::new(random_instance(&mut rng, m, n).unwrap());
            for b in 1..1u64 << m {
                let s = SubsetMask::new(b, m).unwrap();
                match extract_certificate(&o, s) {
                    Err(Error::NotNegative { .. }) => probes += 1,
                    other => return Err(format!("coverage oracle gave {other:?} on {s}")),
                }
            }
        }
    }
    Ok(format!("{certs} f* certificates with 2^(k+1) queries; {probes} probes on coverage oracles all NotNegative"))
}

fn notester() -> Outcome {
    let r = notester_experiment(6, 2, 50, 7).map_err(|e| e.to_string())?;
    ensure(r.feasible == 50, || format!("{} of 50 logs feasible", r.feasible))?;
    ensure(r.cross_check_agreements == 50, || format!("{} cross-check agreements", r.cross_check_agreements))?;
    ensure(r.certificate_queries == 8, || format!("{} certificate queries", r.certificate_queries))?;
    ensure(!r.certificate_feasible, || "certificate family feasible".into())?;
    ensure(r.certificate_witness_valid, || "witness failed the check".into())?;
    ensure(r.certificate_cross_check_agrees, || "cross-check disagrees on the certificate family".into())?;
    Ok("50/50 size-3 logs feasible, 8-query family infeasible with a valid witness, both LPs agree".into())
}

fn wnear() -> Outcome {
    for m in 2..=8 {
        let (_, _, r) = build_wnear_ufar(m).map_err(|e| e.to_string())?;
        let binom = BinomialTable::new(m);
        let expected = BigRational::new(binom.get(m, 2), ((1i64 << m) - 1).into());
        ensure(r.squares_all_one, || format!("square != 1 at m = {m}"))?;
        ensure(r.quadruple_bound == ratio(1, 4), || format!("quadruple bound {} at m = {m}", r.quadruple_bound))?;
        ensure(r.w_distance == expected, || format!("W-distance {} at m = {m}", r.w_distance))?;
    }
    Ok("m = 2..8: all squares 1, quadruple bound 1/4, W-distance C(m,2)/(2^m - 1)".into())
}

fn wfar() -> Outcome {
    let (f_hat, w_hat, n, r) = build_wfar_unear(8).map_err(|e| e.to_string())?;
    ensure((3..=5).all(|i| f_hat.level(i).is_zero()), || "f̂ nonzero on levels 3..5".into())?;
    ensure((3..=7).all(|j| *w_hat.level(j) >= int(1)), || "ŵ(j) < 1 for some j in 3..7".into())?;
    ensure([1, 2, 8].iter().all(|&j| *w_hat.level(j) >= -n.clone()), || "ŵ(j) < -N for j in {1,2,8}".into())?;
    ensure(r.outside_band_fraction == ratio(74, 256), || format!("outside-band fraction {}", r.outside_band_fraction))?;
    ensure(r.nonzero_fraction <= r.outside_band_fraction, || "nonzero values inside the band".into())?;
    ensure(r.wf_consistent, || "ŵ from f̂ disagrees with (-1)^j (h1 + h2)".into())?;
    let dense = forward(&expand_symmetric(&f_hat).unwrap()).unwrap();
    ensure(dense.iter().all(|(s, v)| v == w_hat.level(s.len())), || "dense transform disagrees with ŵ".into())?;
    ensure(r.perturbed_is_coverage, || "base + ŵ has a negative level".into())?;
    Ok(format!(
        "N = {n}; Δf nonzero outside levels 3..5: 74/256 (exact nonzero fraction {}, Δf(∅) = 0)",
        r.nonzero_fraction
    ))
}

fn symmetric_conjecture() -> Outcome {
    let mut draws = 0;
    let mut seed = 1000;
    for m in [3, 6, 9, 12, 16, 20] {
        for k in 0..=4.min(m) {
            seed += 1;
            let r = symmetric_conjecture_trials(m, k, 40, seed).map_err(|e| e.to_string())?;
            ensure(r.violations == 0, || format!("{} draws exceed k+1 zeros at m={m} k={k}", r.violations))?;
            draws += r.trials;
        }
    }
    ensure(draws >= 1000, || format!("only {draws} draws"))?;
    Ok(format!("{draws} draws, m up to 20, half with heads forced to k+1 zeros; none above k+1"))
}

fn tester_power() -> Outcome {
    let m = 6;
    let n = 6;
    let eps = ratio(1, 8);
    let changes = (1usize << m) / 8;
    let mut rng = rng_from_seed(1111);
    let (mut no, mut yes_clean) = (0, 0);
    for trial in 0..200u64 {
        let inst = random_instance(&mut rng, m, n).unwrap();
        let clean = DenseSetFunction::tabulate(&inst).unwrap();
        let mut dirty = clean.clone();
        for t in distinct_nonempty_subsets(&mut rng, m, changes) {
            let bump = small_positive_rational(&mut rng);
            let v = if rng.gen_bool(0.5) { dirty.get(t) + bump } else { dirty.get(t) - bump };
            dirty.set(t, v).unwrap();
        }
        let out = test_coverage(&CountingOracle::new(dirty), n, &eps, trial).map_err(|e| e.to_string())?;
        if out.verdict != TestVerdict::Yes {
            no += 1;
        }
        let out = test_coverage(&CountingOracle::new(clean), n, &eps, trial).map_err(|e| e.to_string())?;
        if out.verdict == TestVerdict::Yes {
            yes_clean += 1;
        }
    }
    ensure(3 * no >= 2 * 200, || format!("rejected only {no}/200 perturbed tables"))?;
    ensure(yes_clean == 200, || format!("accepted only {yes_clean}/200 clean tables"))?;
    Ok(format!("perturbed (8 of 64 entries): No in {no}/200; clean: Yes in {yes_clean}/200"))
}

fn run_battery(dir: &Path) -> Result<(), String> {
    let exe = env!("CARGO_BIN_EXE_wcover");
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    std::fs::write(
        p("log.json"),
        r#"{"m": 2, "entries": [{"set": [1], "value": "1"}, {"set": [2], "value": "1"}, {"set": [1, 2], "value": "3"}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let battery: Vec<Vec<String>> = vec![
        vec!["gen", "fstar", "--m", "4", "--k", "1", "--table", "--out", &p("fstar_table.json")],
        vec!["transform", "--table", &p("fstar_table.json"), "--out", &p("transform.json")],
        vec!["gen", "fstar", "--m", "4", "--k", "1", "--n-override", "25", "--out", &p("fstar_spec.json")],
        vec!["reconstruct", "--oracle", &p("fstar_spec.json"), "--n", "10", "--epsilon", "1/4", "--seed", "5", "--out", &p("rec_fstar.json")],
        vec!["gen", "random-coverage", "--m", "7", "--n", "9", "--seed", "42", "--out", &p("inst.json")],
        vec!["reconstruct", "--oracle", &p("inst.json"), "--n", "9", "--epsilon", "1/8", "--seed", "9", "--out", &p("rec_inst.json")],
        vec!["test", "--oracle", &p("inst.json"), "--n", "9", "--epsilon", "1/8", "--seed", "9", "--out", &p("test_inst.json")],
        vec!["complete", "--log", &p("log.json"), "--out", &p("complete.json")],
        vec!["notester", "--m", "6", "--k", "2", "--trials", "50", "--seed", "7", "--out", &p("notester.json")],
        vec!["conjecture-sym", "--m", "12", "--k", "3", "--trials", "200", "--seed", "3", "--out", &p("conjecture.json")],
        vec!["gen", "wnear", "--m", "4", "--table", &p("wnear_table.json"), "--coefficients", &p("wnear_w.json"), "--out", &p("wnear.json")],
        vec!["gen", "wfar", "--m", "8", "--table", &p("wfar_table.json"), "--out", &p("wfar.json")],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in battery {
        let status = Command::new(exe).args(&args).status().map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("`wcover {}` exited with {status}", args.join(" ")));
        }
    }
    Ok(())
}

fn cli_determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    run_battery(a.path())?;
    run_battery(b.path())?;
    let mut names: Vec<_> = std::fs::read_dir(a.path())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    for name in &names {
        let x = std::fs::read(a.path().join(name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(name)).map_err(|e| e.to_string())?;
        ensure(x == y, || format!("{} differs between runs", name.to_string_lossy()))?;
    }
    Ok(format!("12 commands, {} files byte-identical across two runs", names.len()))
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("transform round trip", transform_round_trip),
        ("coverage characterization", characterization),
        ("reconstruction", reconstruction),
        ("refinement counterexample", refine_counterexample),
        ("f* oracle equivalence", fstar_equivalence),
        ("non-coverage certificates", certificates),
        ("small logs of f* are completable", notester),
        ("supermodular near/far example", wnear),
        ("symmetric far/near construction", wfar),
        ("symmetric zero counts", symmetric_conjecture),
        ("tester power", tester_power),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

