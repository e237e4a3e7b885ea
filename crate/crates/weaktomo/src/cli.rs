//! Command-line front end: `simulate`, `sweep`, `score`, and
//! `analytic-check`.
//!
//! Progress and diagnostics go to standard error; standard output carries
//! only data. Exit codes: 0 success, 1 runtime or tolerance failure, 2 usage
//! or configuration error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::check;
use crate::harness::{run_sweep, ExperimentPlan};
use crate::pipeline::{
    estimate_weak, estimate_weak_with_fallback, run_projective_baseline, run_scheme_on_ensemble,
    EstimatorMode, SchemeConfig,
};
use crate::qubit::{fidelity_score, BlochVector, StateDistribution};
use crate::report::{score_csv, sweep_csv, RunManifest};
use crate::rng::RandomStream;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const USAGE: &str = "\
weaktomo — weak-measurement state estimation for a single qubit

USAGE:
    weaktomo <COMMAND> [FLAGS]

COMMANDS:
    simulate        one estimation experiment on a single state
    sweep           batch (epsilon, a, N) sweep over a state panel -> CSV
    score           sweep with score-only CSV output
    analytic-check  closed-form probabilities vs quadrature/Monte Carlo oracles

SIMULATE FLAGS:
    --state x,y,z        true Bloch vector (inside the unit ball)
    --random             draw the true state instead (see --distribution)
    --eps F              coupling strength of both weak stages (default 0.5)
    --eps1 F, --eps2 F   per-stage strengths (override --eps)
    --a F                discard half-width (default 0)
    --ensemble N         ensemble size (default 30)
    --estimator M        calibrated | paper-naive (default calibrated)
    --distribution D     ball | surface (default ball)
    --seed S             random seed (default 1)
    --json               machine-readable report on stdout

SWEEP/SCORE FLAGS:
    --config PATH        JSON plan file (flat keys, same names as the
                         manifest's plan block); flags below override it
    --states N           panel size
    --runs N             runs per state
    --ensembles LIST     e.g. 30,60
    --eps-grid LIST      e.g. 0.05,0.1,0.2
    --a-grid LIST        e.g. 0,0.2,0.4,0.6,0.8
    --distribution D     ball | surface
    --estimator M        calibrated | paper-naive
    --seed S             master seed
    --workers N          worker threads (0 = all cores); never changes results
    --out-dir DIR        output directory (default .)

ANALYTIC-CHECK FLAGS:
    --points N           random parameter points (default 1000)
    --mc-samples N       also run the Monte Carlo suite at this many members
    --seed S             random seed (default 1)
    --formula NAME       report a variant comparison (supported: discard_x)
    --variant NAME       variant to compare (supported: paper-eps1)

EXIT CODES:
    0 success, 1 runtime or tolerance failure, 2 usage or config error
";

pub fn run<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let mut args = args.into_iter();
    let Some(command) = args.next() else {
        eprint!("{USAGE}");
        return EXIT_USAGE;
    };
    let rest: Vec<String> = args.collect();
    match command.as_str() {
        "simulate" => cmd_simulate(rest),
        "sweep" => cmd_sweep(rest, false),
        "score" => cmd_sweep(rest, true),
        "analytic-check" => cmd_analytic_check(rest),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            EXIT_OK
        }
        other => {
            eprintln!("error: unknown command '{other}'\n");
            eprint!("{USAGE}");
            EXIT_USAGE
        }
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    eprintln!("run 'weaktomo help' for usage");
    EXIT_USAGE
}

fn require_value(
    iter: &mut std::vec::IntoIter<String>,
    flag: &str,
) -> Result<String, String> {
    iter.next().ok_or_else(|| format!("flag '{flag}' needs a value"))
}

fn parse_num<T: std::str::FromStr>(flag: &str, text: &str) -> Result<T, String> {
    text.parse()
        .map_err(|_| format!("flag '{flag}': cannot parse '{text}'"))
}

fn parse_list_f64(flag: &str, text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| parse_num(flag, part.trim()))
        .collect()
}

fn parse_list_usize(flag: &str, text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|part| parse_num(flag, part.trim()))
        .collect()
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct SimulateReport {
    true_state: [f64; 3],
    weak_estimate: [f64; 3],
    projective_estimate: [f64; 3],
    fidelity_weak: f64,
    fidelity_projective: f64,
    discard_fraction_z: f64,
    discard_fraction_x: f64,
    estimation_failures: u32,
    epsilon1: f64,
    epsilon2: f64,
    a: f64,
    ensemble: usize,
    estimator: EstimatorMode,
    seed: u64,
}

struct SimulateArgs {
    state: Option<BlochVector>,
    random: bool,
    distribution: StateDistribution,
    eps1: f64,
    eps2: f64,
    a: f64,
    ensemble: usize,
    estimator: EstimatorMode,
    seed: u64,
    json: bool,
}

fn parse_simulate(args: Vec<String>) -> Result<SimulateArgs, String> {
    let mut parsed = SimulateArgs {
        state: None,
        random: false,
        distribution: StateDistribution::BallUniform,
        eps1: 0.5,
        eps2: 0.5,
        a: 0.0,
        ensemble: 30,
        estimator: EstimatorMode::Calibrated,
        seed: 1,
        json: false,
    };
    let mut eps_both: Option<f64> = None;
    let mut eps1: Option<f64> = None;
    let mut eps2: Option<f64> = None;
    let mut iter = args.into_iter();
    while let Some(flag) = iter.next() {
        match flag.as_str() {
            "--state" => {
                let text = require_value(&mut iter, "--state")?;
                let parts: Vec<&str> = text.split(',').collect();
                if parts.len() != 3 {
                    return Err(format!("--state expects 'x,y,z', got '{text}'"));
                }
                let x = parse_num("--state", parts[0].trim())?;
                let y = parse_num("--state", parts[1].trim())?;
                let z = parse_num("--state", parts[2].trim())?;
                parsed.state = Some(BlochVector::new(x, y, z));
            }
            "--random" => parsed.random = true,
            "--distribution" => {
                parsed.distribution = require_value(&mut iter, "--distribution")?.parse()?;
            }
            "--eps" => eps_both = Some(parse_num("--eps", &require_value(&mut iter, "--eps")?)?),
            "--eps1" => eps1 = Some(parse_num("--eps1", &require_value(&mut iter, "--eps1")?)?),
            "--eps2" => eps2 = Some(parse_num("--eps2", &require_value(&mut iter, "--eps2")?)?),
            "--a" => parsed.a = parse_num("--a", &require_value(&mut iter, "--a")?)?,
            "--ensemble" => {
                parsed.ensemble =
                    parse_num("--ensemble", &require_value(&mut iter, "--ensemble")?)?;
            }
            "--estimator" => {
                parsed.estimator = require_value(&mut iter, "--estimator")?.parse()?;
            }
            "--seed" => parsed.seed = parse_num("--seed", &require_value(&mut iter, "--seed")?)?,
            "--json" => parsed.json = true,
            other => return Err(format!("unknown simulate flag '{other}'")),
        }
    }
    if parsed.state.is_some() && parsed.random {
        return Err("--state and --random are mutually exclusive".into());
    }
    if parsed.state.is_none() && !parsed.random {
        return Err("one of --state or --random is required".into());
    }
    let base = eps_both.unwrap_or(0.5);
    parsed.eps1 = eps1.unwrap_or(base);
    parsed.eps2 = eps2.unwrap_or(base);
    Ok(parsed)
}

fn cmd_simulate(args: Vec<String>) -> i32 {
    let parsed = match parse_simulate(args) {
        Ok(parsed) => parsed,
        Err(message) => return usage_error(&message),
    };

    let true_state = match parsed.state {
        Some(state) => {
            if !state.is_physical() {
                return usage_error(&format!(
                    "state norm {} exceeds the unit ball bound 1",
                    state.norm()
                ));
            }
            state
        }
        None => {
            let mut rng = RandomStream::derived(parsed.seed, &[0]);
            parsed.distribution.sample(&mut rng)
        }
    };

    let build = || -> Result<SchemeConfig, crate::pipeline::PipelineError> {
        let eps1 = crate::pointer::MeasurementStrength::new(parsed.eps1)?;
        let eps2 = crate::pointer::MeasurementStrength::new(parsed.eps2)?;
        let width = crate::analytic::DiscardWidth::new(parsed.a)?;
        SchemeConfig::new(eps1, eps2, width, parsed.ensemble, parsed.estimator)
    };
    let cfg = match build() {
        Ok(cfg) => cfg,
        Err(err) => return usage_error(&err.to_string()),
    };

    let mut rng = RandomStream::derived(parsed.seed, &[1]);
    let tally = match run_scheme_on_ensemble(&true_state, &cfg, &mut rng) {
        Ok(tally) => tally,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_RUNTIME;
        }
    };
    // Failed stages fall back to centroid components so the report is always
    // complete; any failure still turns into exit code 1 below.
    let estimation_error = estimate_weak(&tally, &cfg).err();
    let (weak, failed_stages) = estimate_weak_with_fallback(&tally, &cfg);
    let projective = match run_projective_baseline(&true_state, parsed.ensemble, &mut rng) {
        Ok(projective) => projective,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_RUNTIME;
        }
    };

    let n = parsed.ensemble as f64;
    let report = SimulateReport {
        true_state: [true_state.x, true_state.y, true_state.z],
        weak_estimate: [weak.x, weak.y, weak.z],
        projective_estimate: [projective.x, projective.y, projective.z],
        fidelity_weak: fidelity_score(&true_state, &weak),
        fidelity_projective: fidelity_score(&true_state, &projective),
        discard_fraction_z: tally.z.discarded as f64 / n,
        discard_fraction_x: tally.x.discarded as f64 / n,
        estimation_failures: failed_stages,
        epsilon1: parsed.eps1,
        epsilon2: parsed.eps2,
        a: parsed.a,
        ensemble: parsed.ensemble,
        estimator: parsed.estimator,
        seed: parsed.seed,
    };

    if parsed.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        let vec = |v: &[f64; 3]| format!("({:+.8}, {:+.8}, {:+.8})", v[0], v[1], v[2]);
        println!("true state:           {}", vec(&report.true_state));
        println!("weak estimate:        {}", vec(&report.weak_estimate));
        println!("projective estimate:  {}", vec(&report.projective_estimate));
        println!("fidelity weak:        {:.6}", report.fidelity_weak);
        println!("fidelity projective:  {:.6}", report.fidelity_projective);
        println!("discard fraction z:   {:.6}", report.discard_fraction_z);
        println!("discard fraction x:   {:.6}", report.discard_fraction_x);
        if report.estimation_failures > 0 {
            println!("estimation failures:  {}", report.estimation_failures);
        }
    }
    if let Some(err) = estimation_error {
        eprintln!("error: {err} (failed components report the centroid 0)");
        return EXIT_RUNTIME;
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// sweep / score
// ---------------------------------------------------------------------------

/// Flat JSON plan file: every field optional, names identical to the
/// manifest's plan block. Unknown keys are configuration errors.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanOverrides {
    state_count: Option<usize>,
    runs_per_state: Option<usize>,
    ensemble_sizes: Option<Vec<usize>>,
    epsilon_grid: Option<Vec<f64>>,
    a_grid: Option<Vec<f64>>,
    distribution: Option<StateDistribution>,
    master_seed: Option<u64>,
    estimator_mode: Option<EstimatorMode>,
}

impl PlanOverrides {
    fn apply(self, plan: &mut ExperimentPlan) {
        if let Some(v) = self.state_count {
            plan.state_count = v;
        }
        if let Some(v) = self.runs_per_state {
            plan.runs_per_state = v;
        }
        if let Some(v) = self.ensemble_sizes {
            plan.ensemble_sizes = v;
        }
        if let Some(v) = self.epsilon_grid {
            plan.epsilon_grid = v;
        }
        if let Some(v) = self.a_grid {
            plan.a_grid = v;
        }
        if let Some(v) = self.distribution {
            plan.distribution = v;
        }
        if let Some(v) = self.master_seed {
            plan.master_seed = v;
        }
        if let Some(v) = self.estimator_mode {
            plan.estimator_mode = v;
        }
    }
}

struct SweepArgs {
    plan: ExperimentPlan,
    workers: usize,
    out_dir: PathBuf,
}

fn parse_sweep(args: Vec<String>) -> Result<SweepArgs, String> {
    let mut config_path: Option<PathBuf> = None;
    let mut overrides = PlanOverrides::default();
    let mut workers = 0usize;
    let mut out_dir = PathBuf::from(".");

    let mut iter = args.into_iter();
    while let Some(flag) = iter.next() {
        match flag.as_str() {
            "--config" => config_path = Some(PathBuf::from(require_value(&mut iter, "--config")?)),
            "--states" => {
                overrides.state_count =
                    Some(parse_num("--states", &require_value(&mut iter, "--states")?)?);
            }
            "--runs" => {
                overrides.runs_per_state =
                    Some(parse_num("--runs", &require_value(&mut iter, "--runs")?)?);
            }
            "--ensembles" => {
                overrides.ensemble_sizes = Some(parse_list_usize(
                    "--ensembles",
                    &require_value(&mut iter, "--ensembles")?,
                )?);
            }
            "--eps-grid" => {
                overrides.epsilon_grid = Some(parse_list_f64(
                    "--eps-grid",
                    &require_value(&mut iter, "--eps-grid")?,
                )?);
            }
            "--a-grid" => {
                overrides.a_grid = Some(parse_list_f64(
                    "--a-grid",
                    &require_value(&mut iter, "--a-grid")?,
                )?);
            }
            "--distribution" => {
                overrides.distribution =
                    Some(require_value(&mut iter, "--distribution")?.parse()?);
            }
            "--estimator" => {
                overrides.estimator_mode = Some(require_value(&mut iter, "--estimator")?.parse()?);
            }
            "--seed" => {
                overrides.master_seed =
                    Some(parse_num("--seed", &require_value(&mut iter, "--seed")?)?);
            }
            "--workers" => {
                workers = parse_num("--workers", &require_value(&mut iter, "--workers")?)?;
            }
            "--out-dir" => out_dir = PathBuf::from(require_value(&mut iter, "--out-dir")?),
            other => return Err(format!("unknown sweep flag '{other}'")),
        }
    }

    let mut plan = ExperimentPlan::default();
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(&path)
            .map_err(|err| format!("config {}: {err}", path.display()))?;
        let file_overrides: PlanOverrides = serde_json::from_str(&text)
            .map_err(|err| format!("config {}: {err}", path.display()))?;
        file_overrides.apply(&mut plan);
    }
    overrides.apply(&mut plan);
    Ok(SweepArgs {
        plan,
        workers,
        out_dir,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|err| format!("writing {}: {err}", path.display()))
}

fn cmd_sweep(args: Vec<String>, score_only: bool) -> i32 {
    let SweepArgs {
        plan,
        workers,
        out_dir,
    } = match parse_sweep(args) {
        Ok(parsed) => parsed,
        Err(message) => return usage_error(&message),
    };
    if let Err(err) = plan.validate() {
        return usage_error(&err.to_string());
    }

    let cells = plan.cells().len();
    eprintln!(
        "{}: {} cells x {} states x {} runs (seed {}, workers {})",
        if score_only { "score" } else { "sweep" },
        cells,
        plan.state_count,
        plan.runs_per_state,
        plan.master_seed,
        if workers == 0 { "auto".to_string() } else { workers.to_string() },
    );

    let started = Instant::now();
    let rows = match run_sweep(&plan, workers) {
        Ok(rows) => rows,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_RUNTIME;
        }
    };
    let duration = started.elapsed().as_secs_f64();

    let command = if score_only { "score" } else { "sweep" };
    let mut manifest = RunManifest::new(command, workers, &plan);
    manifest.duration_seconds = duration;
    manifest.failures_total = rows.iter().map(|row| row.failures).sum();

    if let Err(message) = std::fs::create_dir_all(&out_dir)
        .map_err(|err| format!("creating {}: {err}", out_dir.display()))
        .and_then(|()| {
            let csv_name = if score_only { "score.csv" } else { "sweep.csv" };
            let csv = if score_only {
                score_csv(&rows)
            } else {
                sweep_csv(&rows)
            };
            write_file(&out_dir.join(csv_name), &csv)?;
            write_file(&out_dir.join("manifest.json"), &manifest.to_json())?;
            eprintln!(
                "wrote {} and manifest.json to {} in {:.1}s ({} estimation failures)",
                csv_name,
                out_dir.display(),
                duration,
                manifest.failures_total,
            );
            Ok(())
        })
    {
        eprintln!("error: {message}");
        return EXIT_RUNTIME;
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// analytic-check
// ---------------------------------------------------------------------------

struct CheckArgs {
    points: usize,
    mc_samples: Option<usize>,
    seed: u64,
    formula: Option<String>,
    variant: Option<String>,
}

fn parse_check(args: Vec<String>) -> Result<CheckArgs, String> {
    let mut parsed = CheckArgs {
        points: 1000,
        mc_samples: None,
        seed: 1,
        formula: None,
        variant: None,
    };
    let mut iter = args.into_iter();
    while let Some(flag) = iter.next() {
        match flag.as_str() {
            "--points" => {
                parsed.points = parse_num("--points", &require_value(&mut iter, "--points")?)?;
            }
            "--mc-samples" => {
                parsed.mc_samples = Some(parse_num(
                    "--mc-samples",
                    &require_value(&mut iter, "--mc-samples")?,
                )?);
            }
            "--seed" => parsed.seed = parse_num("--seed", &require_value(&mut iter, "--seed")?)?,
            "--formula" => parsed.formula = Some(require_value(&mut iter, "--formula")?),
            "--variant" => parsed.variant = Some(require_value(&mut iter, "--variant")?),
            other => return Err(format!("unknown analytic-check flag '{other}'")),
        }
    }
    Ok(parsed)
}

fn cmd_analytic_check(args: Vec<String>) -> i32 {
    let parsed = match parse_check(args) {
        Ok(parsed) => parsed,
        Err(message) => return usage_error(&message),
    };

    if parsed.formula.is_some() || parsed.variant.is_some() {
        match (parsed.formula.as_deref(), parsed.variant.as_deref()) {
            (Some("discard_x"), Some("paper-eps1")) => {
                let report = check::discard_variant_report(parsed.points, parsed.seed);
                print!("{report}");
                return EXIT_OK;
            }
            (formula, variant) => {
                return usage_error(&format!(
                    "unsupported variant comparison: formula {formula:?}, variant {variant:?} \
                     (supported: --formula discard_x --variant paper-eps1)"
                ));
            }
        }
    }

    let quadrature = check::quadrature_suite(parsed.points, parsed.seed);
    print!("{quadrature}");
    let mut all_passed = quadrature.passed();
    let mut failed: Vec<String> = quadrature
        .failures()
        .map(|item| format!("{} [{}]", item.name, item.worst_case))
        .collect();

    if let Some(samples) = parsed.mc_samples {
        match check::mc_suite(samples, parsed.seed) {
            Ok(mc) => {
                print!("{mc}");
                all_passed &= mc.passed();
                failed.extend(
                    mc.failures()
                        .map(|item| format!("{} [{}]", item.name, item.worst_case)),
                );
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_RUNTIME;
            }
        }
    }

    if all_passed {
        EXIT_OK
    } else {
        for failure in failed {
            eprintln!("tolerance breach: {failure}");
        }
        EXIT_RUNTIME
    }
}
