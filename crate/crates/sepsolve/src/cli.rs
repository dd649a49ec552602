//! The `sepbench` command-line harness.
//!
//! Subcommands: `generate` (instance files), `run` (one algorithm → CSV
//! trace + JSON summary), `compare` (several algorithms on one instance →
//! aligned distance columns), `counterexample` (certified divergence runs),
//! and `selfcheck` (the invariant suite).
//!
//! Exit codes: 0 on success/PASS, 1 on refusals and errors, 2 when an
//! invariant check fails (distance-growth violations on a run, a FAIL
//! verdict on a counterexample, or a failed self-check).

use crate::counterexample::{
    rotation_default_schedule, run_empty_solution_counterexample, run_rotation_counterexample,
    Verdict,
};
use crate::error::{Error, Result};
use crate::generator::{instance_health_report, InstanceSpec, Variant};
use crate::io::{instance_file_from_spec, instance_from_spec, load_instance, InstanceData};
use crate::linalg::Vector;
use crate::pm::run_pm;
use crate::ppsm::run_ppsm;
use crate::problem::ScepInstance;
use crate::pspm::run_pspm;
use crate::report::{combined_d_csv, compare_report, trace_csv, CompareReport, SummaryReport};
use crate::scep::run_scep;
use crate::schedule::ParamSchedule;
use crate::trace::{IterateTrace, RunOptions, StopRule};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "sepbench",
    version,
    about = "Benchmark harness for projection-based split equilibrium solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a reproducible benchmark instance file (JSON).
    Generate(GenerateArgs),
    /// Run one algorithm; emits a CSV trace and a JSON summary.
    Run(RunArgs),
    /// Run several algorithms on one shared instance; emits aligned
    /// distance columns and a ranking.
    Compare(CompareArgs),
    /// Reproduce a divergence counterexample and certify its per-step
    /// inequalities.
    Counterexample(CounterexampleArgs),
    /// Run the invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    General,
    ResolventFriendly,
    Scep,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Pm,
    Pspm,
    Ppsm,
    Scep,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Pm => "pm",
            Algo::Pspm => "pspm",
            Algo::Ppsm => "ppsm",
            Algo::Scep => "scep",
        }
    }
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Instance selection shared by `run` and `compare`: either a file produced
/// by `generate`, or an inline spec.
#[derive(Args, Clone, Debug)]
pub struct InstanceArgs {
    /// Instance file path; overrides the inline spec flags.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Seed for inline generation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Domain dimension for inline generation.
    #[arg(long, default_value_t = 30)]
    pub m: usize,
    /// Image dimension for inline generation.
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    /// Instance family for inline generation.
    #[arg(long, value_enum, default_value_t = VariantArg::General)]
    pub variant: VariantArg,
    /// Component count on the domain side (scep variant only).
    #[arg(long, default_value_t = 2)]
    pub components_c: usize,
    /// Component count on the image side (scep variant only).
    #[arg(long, default_value_t = 2)]
    pub components_q: usize,
}

impl InstanceArgs {
    fn spec(&self) -> InstanceSpec {
        let variant = match self.variant {
            VariantArg::General => Variant::General,
            VariantArg::ResolventFriendly => Variant::ResolventFriendly,
            VariantArg::Scep => Variant::Scep {
                components_c: self.components_c,
                components_q: self.components_q,
            },
        };
        InstanceSpec::new(self.m, self.k, self.seed, variant)
    }

    fn source(&self) -> InstanceSource {
        match &self.instance {
            Some(path) => InstanceSource::File(path.clone()),
            None => InstanceSource::Spec(self.spec()),
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Output path for the instance file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Algorithm to run.
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Exponent s in the step rule beta_n = 1/(n+1)^s.
    #[arg(long, default_value_t = 0.7)]
    pub beta_exponent: f64,
    /// Iteration budget.
    #[arg(long, default_value_t = 400)]
    pub max_iter: usize,
    /// Stop when the squared distance to the known solution drops below
    /// this value (needs a known solution).
    #[arg(long)]
    pub d_tol: Option<f64>,
    /// Stop when both residuals drop below this value. Advisory: small
    /// residuals do not certify a solution.
    #[arg(long)]
    pub residual_tol: Option<f64>,
    /// Resolvent parameter for the proximal baseline.
    #[arg(long, default_value_t = 1.0)]
    pub resolvent_r: f64,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON path; stdout (or stderr when the CSV uses stdout) when
    /// omitted.
    #[arg(long)]
    pub summary_out: Option<PathBuf>,
    /// Drop the elapsed_ms column so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Do not turn invariant violations into a nonzero exit code.
    #[arg(long)]
    pub no_invariant_check: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Comma-separated algorithms, e.g. `pm,pspm`.
    #[arg(long, value_delimiter = ',', default_values_t = [Algo::Pm, Algo::Pspm])]
    pub algos: Vec<Algo>,
    #[arg(long, default_value_t = 0.7)]
    pub beta_exponent: f64,
    #[arg(long, default_value_t = 400)]
    pub max_iter: usize,
    /// Distance threshold used for the rankings.
    #[arg(long, default_value_t = 1e-2)]
    pub d_threshold: f64,
    #[arg(long, default_value_t = 1.0)]
    pub resolvent_r: f64,
    /// Combined CSV output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report JSON path.
    #[arg(long)]
    pub summary_out: Option<PathBuf>,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CounterexampleName {
    Rotation,
    #[value(alias = "empty_solution")]
    EmptySolution,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    /// Which counterexample to run.
    #[arg(value_enum)]
    pub name: CounterexampleName,
    /// Number of steps to certify.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Starting point as comma-separated coordinates.
    #[arg(long, default_value = "1,0")]
    pub x0: String,
    /// CSV output path for the trace.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    /// Seed for the randomized parts of the suite.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

/// One run to execute: the instance it references plus algorithm settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub instance: InstanceSource,
    pub algo: Algo,
    pub beta_exponent: f64,
    pub max_iter: usize,
    pub d_tol: Option<f64>,
    pub residual_tol: Option<f64>,
    pub resolvent_r: f64,
}

#[derive(Clone, Debug)]
pub enum InstanceSource {
    File(PathBuf),
    Spec(InstanceSpec),
}

impl InstanceSource {
    fn resolve(&self) -> Result<(InstanceSpec, InstanceData)> {
        match self {
            InstanceSource::File(path) => {
                let file = load_instance(path)?;
                Ok((file.spec, file.instance))
            }
            InstanceSource::Spec(spec) => Ok((*spec, instance_from_spec(spec)?)),
        }
    }
}

fn compatibility_error(algo: Algo, detail: &str) -> Error {
    Error::AlgorithmMismatch {
        algo: algo.name(),
        detail: detail.into(),
    }
}

/// Refuse algorithm/instance pairings before any work happens.
fn check_compatibility(algo: Algo, data: &InstanceData) -> Result<()> {
    match (algo, data) {
        (Algo::Pm, InstanceData::Sep(_)) => Ok(()),
        (Algo::Pspm, InstanceData::Sep(inst)) => match &inst.f_q {
            crate::bifunction::Bifunction::Quadratic { x_coeff, y_coeff, .. }
                if x_coeff == y_coeff =>
            {
                Ok(())
            }
            _ => Err(compatibility_error(
                algo,
                "needs the resolvent-friendly variant (equal quadratic coefficients on the image side)",
            )),
        },
        (Algo::Ppsm | Algo::Scep, InstanceData::Scep(_)) => Ok(()),
        (Algo::Pm | Algo::Pspm, InstanceData::Scep(_)) => Err(compatibility_error(
            algo,
            "runs on single-bifunction instances; this file holds a multi-component one",
        )),
        (Algo::Ppsm | Algo::Scep, InstanceData::Sep(_)) => Err(compatibility_error(
            algo,
            "needs a multi-component instance (generate with --variant scep)",
        )),
    }
}

/// Execute one configured run. The starting point is the all-ones vector.
pub fn execute_run(config: &RunConfig) -> Result<(InstanceSpec, IterateTrace, SummaryReport)> {
    let (spec, data) = config.instance.resolve()?;
    check_compatibility(config.algo, &data)?;
    let (m, _) = data.dims();
    let x0 = Vector::ones(m);
    let stop = StopRule {
        max_iter: config.max_iter,
        d_tol: config.d_tol,
        residual_tol: config.residual_tol,
    };
    let opts = RunOptions::default();

    let known = match &data {
        InstanceData::Sep(i) => i.known_solution.is_some(),
        InstanceData::Scep(i) => i.known_solution.is_some(),
    };
    if config.d_tol.is_some() && !known {
        return Err(Error::Validation {
            field: "d_tol".into(),
            detail: "distance-based stopping needs an instance with a known solution".into(),
        });
    }

    let (norm, trace) = match (&data, config.algo) {
        (InstanceData::Sep(inst), Algo::Pm) => {
            let norm = inst.certified_norm()?;
            let sched = ParamSchedule::inverse_power_preset(config.beta_exponent, norm)?;
            (norm, run_pm(inst, &x0, &sched, &stop, &opts)?)
        }
        (InstanceData::Sep(inst), Algo::Pspm) => {
            let norm = inst.certified_norm()?;
            let sched = ParamSchedule::inverse_power_preset(config.beta_exponent, norm)?;
            (
                norm,
                run_pspm(inst, &x0, &sched, config.resolvent_r, &stop, &opts)?,
            )
        }
        (InstanceData::Scep(inst), Algo::Ppsm) => {
            let norm = inst.certified_norm()?;
            let sched = ParamSchedule::inverse_power_preset(config.beta_exponent, norm)?;
            (norm, run_ppsm(inst, &x0, &sched, &stop, &opts)?)
        }
        (InstanceData::Scep(inst), Algo::Scep) => {
            let norm = inst.certified_norm()?;
            let sched = ParamSchedule::inverse_power_preset(config.beta_exponent, norm)?;
            (norm, run_scep(inst, &x0, &sched, None, None, &stop, &opts)?)
        }
        _ => unreachable!("compatibility checked above"),
    };

    let sched = ParamSchedule::inverse_power_preset(config.beta_exponent, norm)?;
    let mut summary = SummaryReport::from_trace(
        config.algo.name(),
        Some(spec.seed),
        sched.descriptor(),
        sched.certified(),
        &trace,
        true,
    );
    summary.schedule_warnings = sched.partial_sum_warnings(10_000);
    Ok((spec, trace, summary))
}

/// Execute several configs that must all reference the same instance (same
/// spec when inline, same file contents when loaded). Refuses mismatched
/// instances and instances without a known solution.
pub fn compare_runs(
    configs: &[RunConfig],
) -> Result<(Vec<IterateTrace>, Vec<SummaryReport>, InstanceSpec)> {
    let first = configs.first().ok_or_else(|| Error::Validation {
        field: "configs".into(),
        detail: "compare needs at least one run".into(),
    })?;
    let (spec0, data0) = first.instance.resolve()?;
    for config in &configs[1..] {
        let (spec, _) = config.instance.resolve()?;
        if spec != spec0 {
            return Err(Error::InstanceMismatch {
                detail: format!("configs reference different specs: {spec0:?} vs {spec:?}"),
            });
        }
    }
    let known = match &data0 {
        InstanceData::Sep(i) => i.known_solution.is_some(),
        InstanceData::Scep(i) => i.known_solution.is_some(),
    };
    if !known {
        return Err(Error::Validation {
            field: "instance".into(),
            detail: "compare requires an instance with a known solution".into(),
        });
    }

    let mut traces = Vec::with_capacity(configs.len());
    let mut summaries = Vec::with_capacity(configs.len());
    for config in configs {
        let (_, trace, summary) = execute_run(config)?;
        traces.push(trace);
        summaries.push(summary);
    }
    Ok((traces, summaries, spec0))
}

fn write_or_print(path: &Option<PathBuf>, content: &str, to_stderr_fallback: bool) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
        }
        None if to_stderr_fallback => eprintln!("{content}"),
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<u8> {
    let spec = args.instance.spec();
    let file = instance_file_from_spec(&spec)?;
    crate::io::save_instance(&args.out, &file)?;
    let (m, k) = file.instance.dims();
    println!(
        "{}",
        serde_json::json!({
            "written": args.out.display().to_string(),
            "seed": spec.seed,
            "m": m,
            "k": k,
            "variant": spec.variant,
        })
    );
    Ok(0)
}

fn cmd_run(args: &RunArgs) -> Result<u8> {
    let config = RunConfig {
        instance: args.instance.source(),
        algo: args.algo,
        beta_exponent: args.beta_exponent,
        max_iter: args.max_iter,
        d_tol: args.d_tol,
        residual_tol: args.residual_tol,
        resolvent_r: args.resolvent_r,
    };
    let (_, trace, mut summary) = execute_run(&config)?;
    if args.no_timing {
        summary.wall_ms = None;
    }
    let csv = trace_csv(&trace, !args.no_timing);
    write_or_print(&args.out, &csv, false)?;
    let summary_json = serde_json::to_string_pretty(&summary)?;
    match (&args.summary_out, &args.out) {
        (Some(path), _) => std::fs::write(path, summary_json)?,
        (None, Some(_)) => println!("{summary_json}"),
        (None, None) => eprintln!("{summary_json}"),
    }
    if !args.no_invariant_check && summary.invariant_violations > 0 {
        eprintln!(
            "invariant violation: {} trace rows exceeded the distance-growth tolerance",
            summary.invariant_violations
        );
        return Ok(2);
    }
    Ok(0)
}

fn cmd_compare(args: &CompareArgs) -> Result<u8> {
    let source = args.instance.source();
    let configs: Vec<RunConfig> = args
        .algos
        .iter()
        .map(|&algo| RunConfig {
            instance: source.clone(),
            algo,
            beta_exponent: args.beta_exponent,
            max_iter: args.max_iter,
            d_tol: Some(args.d_threshold),
            residual_tol: None,
            resolvent_r: args.resolvent_r,
        })
        .collect();
    let (traces, mut summaries, _) = compare_runs(&configs)?;
    if args.no_timing {
        for s in &mut summaries {
            s.wall_ms = None;
        }
    }
    let names: Vec<String> = args.algos.iter().map(|a| a.name().to_string()).collect();
    let trace_refs: Vec<&IterateTrace> = traces.iter().collect();
    let csv = combined_d_csv(&names, &trace_refs);
    let report: CompareReport = compare_report(
        &names,
        summaries,
        &trace_refs,
        args.d_threshold,
        !args.no_timing,
    );
    write_or_print(&args.out, &csv, false)?;
    let report_json = serde_json::to_string_pretty(&report)?;
    match (&args.summary_out, &args.out) {
        (Some(path), _) => std::fs::write(path, report_json)?,
        (None, Some(_)) => println!("{report_json}"),
        (None, None) => eprintln!("{report_json}"),
    }
    Ok(0)
}

fn parse_x0(text: &str) -> Result<Vector> {
    let coords: std::result::Result<Vec<f64>, _> =
        text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    coords.map(Vector::from).map_err(|e| Error::Validation {
        field: "x0".into(),
        detail: format!("could not parse `{text}`: {e}"),
    })
}

fn cmd_counterexample(args: &CounterexampleArgs) -> Result<u8> {
    let x0 = parse_x0(&args.x0)?;
    let report = match args.name {
        CounterexampleName::Rotation => {
            let steps = args.steps.unwrap_or(500);
            let sched = rotation_default_schedule()?;
            run_rotation_counterexample(&x0, &sched, steps)?
        }
        CounterexampleName::EmptySolution => {
            let steps = args.steps.unwrap_or(1000);
            run_empty_solution_counterexample(&x0, steps)?
        }
    };
    if args.out.is_some() {
        let csv = trace_csv(&report.trace, !args.no_timing);
        write_or_print(&args.out, &csv, false)?;
    }
    let verdict = match report.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "NOT-APPLICABLE",
    };
    println!(
        "{}",
        serde_json::json!({
            "verdict": verdict,
            "steps": report.steps_checked,
            "final_x": report.trace.final_x.as_slice(),
            "max_closed_form_gap": report.max_closed_form_gap,
            "failures": report.failures,
        })
    );
    Ok(match report.verdict {
        Verdict::Fail => 2,
        _ => 0,
    })
}

fn cmd_selfcheck(args: &SelfcheckArgs) -> Result<u8> {
    let checks = selfcheck_battery(args.seed);
    let mut failures = 0usize;
    for (name, outcome) in &checks {
        match outcome {
            Ok(()) => println!("ok   {name}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} checks, {} failures", checks.len(), failures);
    Ok(if failures == 0 { 0 } else { 2 })
}

type CheckOutcome = std::result::Result<(), String>;

/// The invariant battery behind `selfcheck`. Deterministic given the seed.
pub fn selfcheck_battery(seed: u64) -> Vec<(String, CheckOutcome)> {
    let mut checks: Vec<(String, CheckOutcome)> = Vec::new();
    let mut push = |name: &str, outcome: CheckOutcome| checks.push((name.into(), outcome));

    push(
        "box projection properties",
        check_projection_properties(seed),
    );
    push("generated instance health", check_instance_health(seed));
    push("distance-growth check on pm runs", check_pm_fejer(seed));
    push(
        "parallel variants degenerate bitwise to pm",
        check_degeneracy(seed),
    );
    push("rotation counterexample", check_rotation());
    push("empty-solution counterexample", check_empty_solution());
    push(
        "resolvent closed form and optimality",
        check_resolvent(seed),
    );
    push(
        "determinism of generation and runs",
        check_determinism(seed),
    );
    checks
}

fn check_projection_properties(seed: u64) -> CheckOutcome {
    use crate::rng::Rng;
    use crate::sets::BoxSet;
    let mut rng = Rng::seeded(seed ^ 0x1);
    for _ in 0..200 {
        let dim = 1 + (rng.uniform(0.0, 4.0) as usize);
        let b = BoxSet::cube(dim, -1.0, 5.0).map_err(|e| e.to_string())?;
        let draw = |rng: &mut Rng| Vector((0..dim).map(|_| rng.uniform(-12.0, 12.0)).collect());
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let px = b.project(&x);
        let py = b.project(&y);
        // Firm nonexpansiveness.
        let lhs = px.sub(&py).dot(&x.sub(&y));
        let rhs = px.sub(&py).norm_sq();
        if lhs < rhs - 1e-10 {
            return Err(format!("firm nonexpansiveness violated: {lhs} < {rhs}"));
        }
        // Distance reduction toward feasible points.
        let inside = b.project(&draw(&mut rng));
        let lhs2 = inside.dist_sq(&py) + py.dist_sq(&y);
        let rhs2 = inside.dist_sq(&y);
        if lhs2 > rhs2 + 1e-10 {
            return Err(format!("distance inequality violated: {lhs2} > {rhs2}"));
        }
        if b.project(&py) != py {
            return Err("projection is not idempotent".into());
        }
    }
    Ok(())
}

fn check_instance_health(seed: u64) -> CheckOutcome {
    for (m, k) in [(5usize, 3usize), (10, 6)] {
        for variant in [
            Variant::General,
            Variant::ResolventFriendly,
            Variant::Scep {
                components_c: 2,
                components_q: 2,
            },
        ] {
            let spec = InstanceSpec::new(m, k, seed, variant);
            let data = instance_from_spec(&spec).map_err(|e| e.to_string())?;
            let as_scep = match data {
                InstanceData::Sep(inst) => ScepInstance::from_sep(&inst),
                InstanceData::Scep(inst) => inst,
            };
            let issues = instance_health_report(&as_scep, 300);
            if !issues.is_empty() {
                return Err(format!("({m},{k},{variant:?}): {issues:?}"));
            }
        }
    }
    Ok(())
}

fn check_pm_fejer(seed: u64) -> CheckOutcome {
    for s in [0.7, 1.0] {
        for offset in 0..2u64 {
            let spec = InstanceSpec::new(5, 3, seed.wrapping_add(offset), Variant::General);
            let inst = crate::generator::generate_sep_instance(&spec).map_err(|e| e.to_string())?;
            let norm = inst.certified_norm().map_err(|e| e.to_string())?;
            let sched = ParamSchedule::inverse_power_preset(s, norm).map_err(|e| e.to_string())?;
            let trace = run_pm(
                &inst,
                &Vector::ones(5),
                &sched,
                &StopRule::max_iter(150),
                &RunOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            let violations = trace.violation_count(crate::trace::FEJER_TOL);
            if violations > 0 {
                return Err(format!(
                    "s = {s}, seed offset {offset}: {violations} violations, max {:.3e}",
                    trace.max_fejer_violation()
                ));
            }
        }
    }
    Ok(())
}

fn check_degeneracy(seed: u64) -> CheckOutcome {
    use crate::pm::pm_step;
    use crate::ppsm::ppsm_step;
    use crate::scep::scep_step;
    let spec = InstanceSpec::new(4, 3, seed ^ 0x2, Variant::General);
    let sep = crate::generator::generate_sep_instance(&spec).map_err(|e| e.to_string())?;
    let scep = ScepInstance::from_sep(&sep);
    let norm = sep.certified_norm().map_err(|e| e.to_string())?;
    let sched = ParamSchedule::inverse_power_preset(0.7, norm).map_err(|e| e.to_string())?;
    let mut x = Vector::ones(4);
    for n in 0..50 {
        let (a, _) = pm_step(&sep, &x, n, &sched).map_err(|e| e.to_string())?;
        let (b, _) = ppsm_step(&scep, &x, n, &sched).map_err(|e| e.to_string())?;
        let (c, _) = scep_step(&scep, &x, n, &sched, &[1.0], &[1.0]).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("sum-parallel variant diverged from pm at n = {n}"));
        }
        if a != c {
            return Err(format!(
                "common-parallel variant diverged from pm at n = {n}"
            ));
        }
        x = a;
    }
    Ok(())
}

fn check_rotation() -> CheckOutcome {
    let sched = rotation_default_schedule().map_err(|e| e.to_string())?;
    let report = run_rotation_counterexample(&Vector(vec![1.0, 0.0]), &sched, 200)
        .map_err(|e| e.to_string())?;
    if report.verdict != Verdict::Pass {
        return Err(format!("{:?}", report.failures));
    }
    Ok(())
}

fn check_empty_solution() -> CheckOutcome {
    let report = run_empty_solution_counterexample(&Vector(vec![1.0, 0.0]), 300)
        .map_err(|e| e.to_string())?;
    if report.verdict != Verdict::Pass {
        return Err(format!("{:?}", report.failures));
    }
    Ok(())
}

fn check_resolvent(seed: u64) -> CheckOutcome {
    use crate::bifunction::Bifunction;
    use crate::linalg::Matrix;
    use crate::qp::{prox_optimality_residual, solve_resolvent};
    use crate::sets::BoxSet;
    let q = BoxSet::cube(2, -2.0, 5.0).map_err(|e| e.to_string())?;
    let f = Bifunction::quadratic(Matrix::identity(2), Matrix::identity(2), Vector::zeros(2))
        .map_err(|e| e.to_string())?;
    let u = Vector(vec![2.0, 2.0]);
    let z = solve_resolvent(&f, 1.0, &u, &q, 1e-10).map_err(|e| e.to_string())?;
    if (z[0] - 1.0).abs() > 1e-6 || (z[1] - 1.0).abs() > 1e-6 {
        return Err(format!(
            "closed form expected (1, 1), got ({}, {})",
            z[0], z[1]
        ));
    }
    let mut rng = crate::rng::Rng::seeded(seed ^ 0x3);
    let worst =
        prox_optimality_residual(&f, 1.0, &u, &z, &q, 200, &mut rng).map_err(|e| e.to_string())?;
    if worst < -1e-6 {
        return Err(format!("sampled optimality residual {worst}"));
    }
    Ok(())
}

fn check_determinism(seed: u64) -> CheckOutcome {
    let spec = InstanceSpec::new(5, 3, seed ^ 0x4, Variant::General);
    let a = instance_from_spec(&spec).map_err(|e| e.to_string())?;
    let b = instance_from_spec(&spec).map_err(|e| e.to_string())?;
    if a != b {
        return Err("regenerating the same spec produced a different instance".into());
    }
    let config = RunConfig {
        instance: InstanceSource::Spec(spec),
        algo: Algo::Pm,
        beta_exponent: 0.7,
        max_iter: 60,
        d_tol: None,
        residual_tol: None,
        resolvent_r: 1.0,
    };
    let (_, t1, _) = execute_run(&config).map_err(|e| e.to_string())?;
    let (_, t2, _) = execute_run(&config).map_err(|e| e.to_string())?;
    let c1 = trace_csv(&t1, false);
    let c2 = trace_csv(&t2, false);
    if c1 != c2 {
        return Err("two identical runs produced different traces".into());
    }
    Ok(())
}

pub fn dispatch(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Run(args) => cmd_run(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Counterexample(args) => cmd_counterexample(args),
        Command::Selfcheck(args) => cmd_selfcheck(args),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
