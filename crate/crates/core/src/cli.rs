//! The `wcover` command line.
//!
//! Reports are pretty-printed JSON with fixed key order. Exit codes: `0` when
//! the analysis ran (whatever the verdict), `2` for bad input, `3` when a size
//! guard trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use crate::adversarial::FStarParams;
use crate::completion::{completion_feasible, notester_experiment, Completion};
use crate::distance_lab::{build_wfar_unear, build_wnear_ufar, expand_symmetric, square_value, symmetric_conjecture_trials};
use crate::error::{Error, Result};
use crate::function::DenseSetFunction;
use crate::io::{
    coefficients_to_json, fstar_spec, instance_to_json, log_from_json, oracle_from_spec, parse_oracle_spec,
    set_value, table_from_json, table_to_json, to_json_string, InstanceJson, LogJson, SetValue, TableJson,
};
use crate::rational::{parse_rational, serde_str};
use crate::reconstruct::{recover, test_coverage, Rejection, TestVerdict, TesterOutcome};
use crate::sampling::{random_instance, rng_from_seed};
use crate::subset::{check_dense, SubsetMask, DEFAULT_MAX_DENSE};
use crate::wtransform::{forward, verdict_from_coefficients, w_distance, CoverageVerdict, WCoefficients};

/// Largest `m` for which `gen fstar --table` writes a full table.
const FSTAR_TABLE_MAX_M: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "wcover", version, about = "Exact analysis of coverage set functions")]
pub struct Cli {
    /// Seed for every random choice; randomized reports record the seed used.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Refuse dense tables over more than this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DENSE)]
    pub max_m: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// W-coefficients, coverage verdict and W-distance of a full table.
    Transform {
        #[arg(long)]
        table: PathBuf,
    },
    /// Recover a coverage instance through the value oracle.
    Reconstruct(OracleArgs),
    /// Run the coverage tester (requires --epsilon).
    Test(OracleArgs),
    /// Generate instances, hard functions and constructions.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Decide whether a partial table extends to a coverage function.
    Complete {
        #[arg(long)]
        log: PathBuf,
    },
    /// Random small logs of f* against completability.
    Notester {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Zero counts of symmetric polynomials with a negative tail.
    ConjectureSym {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Time reconstruction of a random instance.
    Bench {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Oracle spec, instance or table file.
    #[arg(long)]
    pub oracle: PathBuf,
    /// Support bound.
    #[arg(long)]
    pub n: usize,
    /// Distance parameter, e.g. 1/8.
    #[arg(long)]
    pub epsilon: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// The hard function f*, as an oracle spec or (--table) a full table.
    Fstar {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Replace the default N = (2^m)! + 1.
        #[arg(long)]
        n_override: Option<String>,
        #[arg(long)]
        table: bool,
    },
    /// Supermodular function with few negative coefficients.
    Wnear {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        coefficients: Option<PathBuf>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Symmetric perturbation for the function with many negative coefficients.
    Wfar {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        coefficients: Option<PathBuf>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Random coverage instance with small rational weights (requires --seed).
    RandomCoverage {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GroundSetTooLarge { m, .. } if *m > 0 => 3,
        _ => 2,
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let report = match &cli.command {
        Command::Transform { table } => to_json_string(&cmd_transform(table, cli.max_m)?)?,
        Command::Reconstruct(a) => to_json_string(&cmd_reconstruct(a, cli.seed)?)?,
        Command::Test(a) => to_json_string(&cmd_test(a, cli.seed)?)?,
        Command::Gen(g) => cmd_gen(g, cli)?,
        Command::Complete { log } => to_json_string(&cmd_complete(log)?)?,
        Command::Notester { m, k, trials } => to_json_string(&cmd_notester(*m, *k, *trials, cli.seed)?)?,
        Command::ConjectureSym { m, k, trials } => to_json_string(&cmd_conjecture(*m, *k, *trials, cli.seed)?)?,
        Command::Bench { m, n, reps } => to_json_string(&cmd_bench(*m, *n, *reps, cli.seed)?)?,
    };
    emit(cli.out.as_deref(), &report)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

#[derive(Serialize)]
struct TransformReport {
    m: usize,
    verdict: &'static str,
    #[serde(with = "serde_str")]
    w_distance: BigRational,
    negative_count: usize,
    support: Option<InstanceJson>,
    witness: Option<SetValue>,
    coefficients: Vec<SetValue>,
}

fn cmd_transform(path: &Path, max_m: usize) -> Result<TransformReport> {
    let f = table_from_json(&read_json::<TableJson>(path)?, max_m)?;
    let w = forward(&f)?;
    let (verdict, support, witness) = match verdict_from_coefficients(&w) {
        CoverageVerdict::Coverage(inst) => ("coverage", Some(instance_to_json(&inst)), None),
        CoverageVerdict::NotCoverage { set, value } => ("not-coverage", None, Some(set_value(set, &value))),
    };
    Ok(TransformReport {
        m: f.m(),
        verdict,
        w_distance: w_distance(&w),
        negative_count: w.negatives().len(),
        support,
        witness,
        coefficients: coefficients_to_json(&w).coefficients,
    })
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RejectionJson {
    NegativeWeight {
        level: usize,
        set: Vec<usize>,
        #[serde(with = "serde_str")]
        weight: BigRational,
    },
    SupportExceeded {
        level: usize,
        live: usize,
        limit: usize,
    },
    ResidualWeight {
        #[serde(with = "serde_str")]
        weight: BigRational,
    },
    Mismatch {
        set: Vec<usize>,
        #[serde(with = "serde_str")]
        expected: BigRational,
        #[serde(with = "serde_str")]
        got: BigRational,
    },
}

impl From<&Rejection> for RejectionJson {
    fn from(r: &Rejection) -> Self {
        match r {
            Rejection::NegativeWeight { level, prefix, weight } => RejectionJson::NegativeWeight {
                level: *level,
                set: prefix.elements(),
                weight: weight.clone(),
            },
            Rejection::SupportExceeded { level, live, limit } => RejectionJson::SupportExceeded {
                level: *level,
                live: *live,
                limit: *limit,
            },
            Rejection::ResidualWeight { weight } => RejectionJson::ResidualWeight { weight: weight.clone() },
            Rejection::Mismatch { set, expected, got } => RejectionJson::Mismatch {
                set: set.elements(),
                expected: expected.clone(),
                got: got.clone(),
            },
        }
    }
}

fn verdict_name(r: Option<&Rejection>) -> &'static str {
    match r {
        None => "coverage",
        Some(Rejection::SupportExceeded { .. }) => "support-exceeded",
        Some(_) => "not-coverage",
    }
}

#[derive(Serialize)]
struct TesterJson {
    #[serde(with = "serde_str")]
    epsilon: BigRational,
    seed: u64,
    samples: usize,
    samples_checked: usize,
    verdict: &'static str,
    rejection: Option<RejectionJson>,
}

fn tester_json(t: &TesterOutcome, epsilon: BigRational, seed: u64) -> TesterJson {
    let rejection = match &t.verdict {
        TestVerdict::Yes => None,
        TestVerdict::No(r) => Some(r.into()),
    };
    TesterJson {
        epsilon,
        seed,
        samples: t.samples,
        samples_checked: t.samples_checked,
        verdict: if rejection.is_none() { "yes" } else { "no" },
        rejection,
    }
}

#[derive(Serialize)]
struct ReconstructReport {
    m: usize,
    n: usize,
    verdict: &'static str,
    queries: u64,
    query_bound: u64,
    levels: Option<Vec<usize>>,
    instance: Option<InstanceJson>,
    rejection: Option<RejectionJson>,
    tester: Option<TesterJson>,
}

fn rejection_of(e: Error) -> Result<Rejection> {
    match e {
        Error::NegativeWeight { level, prefix, weight } => Ok(Rejection::NegativeWeight { level, prefix, weight }),
        Error::SupportExceeded { level, live, limit } => Ok(Rejection::SupportExceeded { level, live, limit }),
        Error::ResidualWeight { weight } => Ok(Rejection::ResidualWeight { weight }),
        other => Err(other),
    }
}

fn query_bound(m: usize, n: usize) -> u64 {
    2 * m as u64 * n as u64 + 1
}

fn cmd_reconstruct(a: &OracleArgs, seed: Option<u64>) -> Result<ReconstructReport> {
    let spec = parse_oracle_spec(&fs::read_to_string(&a.oracle)?)?;
    let o = oracle_from_spec(&spec)?;
    let epsilon = a.epsilon.as_deref().map(parse_rational).transpose()?;
    let (levels, instance, rejection) = match recover(&o, a.n) {
        Ok(r) => (Some(r.levels), Some(r.instance), None),
        Err(e) => (None, None, Some(rejection_of(e)?)),
    };
    let queries = o.queries();
    let tester = match epsilon {
        Some(eps) => {
            let seed = seed_or_fresh(seed);
            o.reset();
            let t = test_coverage(&o, a.n, &eps, seed)?;
            Some(tester_json(&t, eps, seed))
        }
        None => None,
    };
    Ok(ReconstructReport {
        m: o.m(),
        n: a.n,
        verdict: verdict_name(rejection.as_ref()),
        queries,
        query_bound: query_bound(o.m(), a.n),
        levels,
        instance: instance.as_ref().map(instance_to_json),
        rejection: rejection.as_ref().map(Into::into),
        tester,
    })
}

#[derive(Serialize)]
struct TestReport {
    m: usize,
    n: usize,
    queries: u64,
    tester: TesterJson,
}

fn cmd_test(a: &OracleArgs, seed: Option<u64>) -> Result<TestReport> {
    let eps = a
        .epsilon
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("test needs --epsilon".into()))?;
    let eps = parse_rational(eps)?;
    let spec = parse_oracle_spec(&fs::read_to_string(&a.oracle)?)?;
    let o = oracle_from_spec(&spec)?;
    let seed = seed_or_fresh(seed);
    let t = test_coverage(&o, a.n, &eps, seed)?;
    Ok(TestReport {
        m: o.m(),
        n: a.n,
        queries: o.queries(),
        tester: tester_json(&t, eps, seed),
    })
}

#[derive(Serialize)]
struct WNearJson {
    m: usize,
    #[serde(with = "serde_str")]
    w_distance: BigRational,
    squares_checked: usize,
    square_values: Vec<String>,
    squares_all_one: bool,
    monotone: bool,
    nonnegative: bool,
    #[serde(with = "serde_str")]
    quadruple_bound: BigRational,
}

#[derive(Serialize)]
struct WFarJson {
    m: usize,
    k: usize,
    #[serde(rename = "N", with = "serde_str")]
    n: BigRational,
    f_hat: Vec<String>,
    w_hat: Vec<String>,
    alpha: Vec<String>,
    band_zero: bool,
    upper_levels_ok: bool,
    lower_levels_ok: bool,
    #[serde(with = "serde_str")]
    outside_band_fraction: BigRational,
    #[serde(with = "serde_str")]
    nonzero_fraction: BigRational,
    wf_consistent: bool,
    perturbed_is_coverage: bool,
    #[serde(with = "serde_str")]
    base_w_distance: BigRational,
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn write_side_file<T: Serialize>(path: &Option<PathBuf>, value: impl FnOnce() -> Result<T>) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, to_json_string(&value()?)?)?;
    }
    Ok(())
}

fn cmd_gen(g: &GenCommand, cli: &Cli) -> Result<String> {
    match g {
        GenCommand::Fstar { m, k, n_override, table } => {
            let params = match n_override {
                Some(n) => FStarParams::with_n(*m, *k, parse_rational(n)?)?,
                None => FStarParams::new(*m, *k)?,
            };
            if *table {
                check_dense(*m, cli.max_m.min(FSTAR_TABLE_MAX_M))?;
                to_json_string(&table_to_json(&DenseSetFunction::tabulate_with_limit(&params, cli.max_m)?))
            } else {
                to_json_string(&fstar_spec(&params))
            }
        }
        GenCommand::Wnear { m, coefficients, table } => {
            check_dense(*m, cli.max_m)?;
            let (w, f, r) = build_wnear_ufar(*m)?;
            write_side_file(coefficients, || Ok(coefficients_to_json(&w)))?;
            write_side_file(table, || Ok(table_to_json(&f)))?;
            let mut values = std::collections::BTreeSet::new();
            for t in 0..1u32 << m {
                let ts = SubsetMask::new(t as u64, *m)?;
                for i in 1..=*m {
                    for j in i + 1..=*m {
                        if !ts.contains(i) && !ts.contains(j) {
                            values.insert(square_value(&f, ts, i, j)?);
                        }
                    }
                }
            }
            to_json_string(&WNearJson {
                m: r.m,
                w_distance: r.w_distance,
                squares_checked: r.squares_checked,
                square_values: values.iter().map(ToString::to_string).collect(),
                squares_all_one: r.squares_all_one,
                monotone: r.monotone,
                nonnegative: r.nonnegative,
                quadruple_bound: r.quadruple_bound,
            })
        }
        GenCommand::Wfar { m, coefficients, table } => {
            check_dense(*m, cli.max_m)?;
            let (f_hat, w_hat, n, r) = build_wfar_unear(*m)?;
            write_side_file(table, || Ok(table_to_json(&expand_symmetric(&f_hat)?)))?;
            write_side_file(coefficients, || {
                let w = WCoefficients::from_fn(*m, |s| w_hat.level(s.len()).clone())?;
                Ok(coefficients_to_json(&w))
            })?;
            to_json_string(&WFarJson {
                m: r.m,
                k: r.k,
                n,
                f_hat: strings(f_hat.levels()),
                w_hat: strings(w_hat.levels()),
                alpha: strings(&r.alpha),
                band_zero: r.band_zero,
                upper_levels_ok: r.upper_levels_ok,
                lower_levels_ok: r.lower_levels_ok,
                outside_band_fraction: r.outside_band_fraction,
                nonzero_fraction: r.nonzero_fraction,
                wf_consistent: r.wf_consistent,
                perturbed_is_coverage: r.perturbed_is_coverage,
                base_w_distance: r.base_w_distance,
            })
        }
        GenCommand::RandomCoverage { m, n } => {
            let seed = cli
                .seed
                .ok_or_else(|| Error::InvalidParameter("random-coverage needs --seed".into()))?;
            let inst = random_instance(&mut rng_from_seed(seed), *m, *n)?;
            to_json_string(&instance_to_json(&inst))
        }
    }
}

#[derive(Serialize)]
struct AlphaJson {
    alpha: Vec<SetValue>,
}

#[derive(Serialize)]
struct CompleteReport {
    feasible: bool,
    completion: Option<TableJson>,
    witness: Option<AlphaJson>,
}

fn cmd_complete(path: &Path) -> Result<CompleteReport> {
    let log = log_from_json(&read_json::<LogJson>(path)?)?;
    Ok(match completion_feasible(&log)? {
        Completion::Feasible(f) => CompleteReport {
            feasible: true,
            completion: Some(table_to_json(&f)),
            witness: None,
        },
        Completion::Infeasible(w) => CompleteReport {
            feasible: false,
            completion: None,
            witness: Some(AlphaJson {
                alpha: w.alpha.iter().map(|(s, a)| set_value(*s, a)).collect(),
            }),
        },
    })
}

#[derive(Serialize)]
struct NotesterJson {
    m: usize,
    k: usize,
    #[serde(rename = "N", with = "serde_str")]
    n: BigRational,
    seed: u64,
    trials: usize,
    log_size: usize,
    feasible: usize,
    infeasible: usize,
    cross_check_agreements: usize,
    certificate_set: Vec<usize>,
    certificate_queries: u64,
    certificate_feasible: bool,
    certificate_witness_valid: bool,
    certificate_cross_check_agrees: bool,
}

fn cmd_notester(m: usize, k: usize, trials: usize, seed: Option<u64>) -> Result<NotesterJson> {
    let r = notester_experiment(m, k, trials, seed_or_fresh(seed))?;
    Ok(NotesterJson {
        m: r.m,
        k: r.k,
        n: r.n,
        seed: r.seed,
        trials: r.trials,
        log_size: r.log_size,
        feasible: r.feasible,
        infeasible: r.infeasible,
        cross_check_agreements: r.cross_check_agreements,
        certificate_set: r.certificate_set.elements(),
        certificate_queries: r.certificate_queries,
        certificate_feasible: r.certificate_feasible,
        certificate_witness_valid: r.certificate_witness_valid,
        certificate_cross_check_agrees: r.certificate_cross_check_agrees,
    })
}

#[derive(Serialize)]
struct ConjectureJson {
    m: usize,
    k: usize,
    seed: u64,
    trials: usize,
    forced_draws: usize,
    max_zeros: usize,
    bound: usize,
    violations: usize,
    histogram: Vec<usize>,
}

fn cmd_conjecture(m: usize, k: usize, trials: usize, seed: Option<u64>) -> Result<ConjectureJson> {
    let r = symmetric_conjecture_trials(m, k, trials, seed_or_fresh(seed))?;
    Ok(ConjectureJson {
        m: r.m,
        k: r.k,
        seed: r.seed,
        trials: r.trials,
        forced_draws: r.forced_draws,
        max_zeros: r.max_zeros,
        bound: r.k + 1,
        violations: r.violations,
        histogram: r.histogram,
    })
}

#[derive(Serialize)]
struct BenchJson {
    m: usize,
    n: usize,
    seed: u64,
    reps: usize,
    support: usize,
    queries: u64,
    query_bound: u64,
    mean_micros: u128,
}

fn cmd_bench(m: usize, n: usize, reps: usize, seed: Option<u64>) -> Result<BenchJson> {
    let seed = seed_or_fresh(seed);
    let inst = random_instance(&mut rng_from_seed(seed), m, n)?;
    let support = inst.len();
    let o = crate::oracle::CountingOracle::new(inst);
    let reps = reps.max(1);
    let start = Instant::now();
    let mut queries = 0;
    for _ in 0..reps {
        o.reset();
        queries = recover(&o, n)?.queries_used;
    }
    Ok(BenchJson {
        m,
        n,
        seed,
        reps,
        support,
        queries,
        query_bound: query_bound(m, n),
        mean_micros: start.elapsed().as_micros() / reps as u128,
    })
}
