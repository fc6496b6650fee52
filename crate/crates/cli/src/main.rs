//! coverlife: generate sensor-coverage instances, schedule them with the
//! library's solvers, check schedules, and drive the experiment grids.
//!
//! Exit codes: 0 on success, 1 on a usage error (bad flags/arguments),
//! 2 when the work itself fails — infeasible instance, failed generation,
//! oracle blow-up, or a schedule that does not validate.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coverlife_core::{
    enumerate_minimal_covers, generate, lp_optimal_lifetime, run_experiment, upper_bound,
    validate_schedule, write_outputs, Algorithm, CoverageMatrix, ExperimentSpec, GenConfig,
    Instance, Schedule, DEFAULT_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "coverlife",
    version,
    about = "Sensor network lifetime maximization: solvers, oracle, experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Alg {
    Hef,
    Cardei,
    Bgop,
    Gk,
    Naive,
}

impl From<Alg> for Algorithm {
    fn from(a: Alg) -> Algorithm {
        match a {
            Alg::Hef => Algorithm::Hef,
            Alg::Cardei => Algorithm::Cardei,
            Alg::Bgop => Algorithm::Bgop,
            Alg::Gk => Algorithm::Gk,
            Alg::Naive => Algorithm::Naive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and write it as JSON
    Gen(GenArgs),
    /// Schedule one instance with one algorithm
    Solve(SolveArgs),
    /// Exact optimum by minimal-cover enumeration plus LP (small instances)
    Oracle(OracleArgs),
    /// Run a preset experiment grid and write CSV + plot data
    Exp(ExpArgs),
    /// Check a schedule file against an instance
    Validate(ValidateArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of sensors
    #[arg(long, default_value_t = 1000)]
    n_sensors: usize,
    /// Number of targets
    #[arg(long, default_value_t = 800)]
    n_targets: usize,
    /// Side of the square the sensors land in
    #[arg(long, default_value_t = 1000.0)]
    sensor_area: f64,
    /// Side of the centered square the targets land in
    #[arg(long, default_value_t = 800.0)]
    target_area: f64,
    /// Sensing radius
    #[arg(long, default_value_t = 70.0)]
    range: f64,
    /// PRNG seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Extra attempts when a draw leaves some target uncovered
    #[arg(long, default_value_t = 1000)]
    max_resamples: u32,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON file
    #[arg(long)]
    instance: PathBuf,
    /// Scheduling algorithm
    #[arg(long, value_enum)]
    alg: Alg,
    /// Granularity parameter in (0,1]; ignored by naive (pinned to 1)
    #[arg(long, default_value_t = 1.0)]
    w: f64,
    /// Approximation parameter for gk; derived from --w when omitted
    #[arg(long)]
    epsilon: Option<f64>,
    /// Write the schedule as JSON
    #[arg(long)]
    schedule_out: Option<PathBuf>,
    /// Print runtime_ms as 0 for byte-stable output
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance JSON file
    #[arg(long)]
    instance: PathBuf,
    /// Abort when the instance has more minimal covers than this
    #[arg(long, default_value_t = coverlife_core::DEFAULT_COVER_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct ExpArgs {
    /// Experiment preset (1-4)
    #[arg(long)]
    id: u8,
    /// Base seed for the whole grid
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Replications per grid cell (preset default: 15)
    #[arg(long)]
    reps: Option<usize>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Zero the runtime column so reruns are byte-identical
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Instance JSON file
    #[arg(long)]
    instance: PathBuf,
    /// Schedule JSON file
    #[arg(long)]
    schedule: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version are successful exits, not usage errors
            let benign = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args, &mut out),
        Command::Solve(args) => cmd_solve(args, &mut out),
        Command::Oracle(args) => cmd_oracle(args, &mut out),
        Command::Exp(args) => cmd_exp(args, &mut out),
        Command::Validate(args) => cmd_validate(args, &mut out),
    };
    match outcome {
        Ok(code) => code,
        // a reader hanging up mid-stream (e.g. piping into head) is not
        // a failure of the work itself
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause
            .downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn load_instance(path: &PathBuf) -> Result<(Instance, CoverageMatrix)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading instance {}", path.display()))?;
    let instance = Instance::from_json(&text)
        .with_context(|| format!("parsing instance {}", path.display()))?;
    let matrix = CoverageMatrix::build(&instance).context("instance is infeasible")?;
    Ok((instance, matrix))
}

fn cmd_gen(args: GenArgs, out: &mut impl Write) -> Result<ExitCode> {
    let config = GenConfig {
        n_sensors: args.n_sensors,
        n_targets: args.n_targets,
        sensor_area: args.sensor_area,
        target_area: args.target_area,
        range: args.range,
        seed: args.seed,
        max_resamples: args.max_resamples,
    };
    let instance = generate(&config).context("instance generation failed")?;
    let json = instance.to_json();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json)
                .with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => write!(out, "{json}")?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs, out: &mut impl Write) -> Result<ExitCode> {
    let (instance, matrix) = load_instance(&args.instance)?;
    let algorithm: Algorithm = args.alg.into();
    let battery = instance.battery();
    let started = Instant::now();
    let (result, epsilon) = match (algorithm, args.epsilon) {
        (Algorithm::Gk, Some(eps)) => {
            let config = coverlife_core::GkConfig::new(eps)?;
            (coverlife_core::run_gk(&matrix, battery, &config), Some(eps))
        }
        _ => coverlife_core::solve_one(&matrix, battery, algorithm, args.w)?,
    };
    let runtime_ms = if args.no_timing {
        0.0
    } else {
        started.elapsed().as_secs_f64() * 1000.0
    };

    let report = validate_schedule(&matrix, battery, &result.schedule, DEFAULT_TOLERANCE);
    anyhow::ensure!(report.pass, "solver produced an invalid schedule:\n{report}");

    let lifetime = result.schedule.total_lifetime();
    let ub = upper_bound(&matrix, battery);
    writeln!(out, "algorithm: {algorithm}")?;
    writeln!(out, "w: {}", coverlife_core::effective_w(algorithm, args.w))?;
    if let Some(eps) = epsilon {
        writeln!(out, "epsilon: {eps:.6}")?;
    }
    writeln!(out, "lifetime: {lifetime:.6}")?;
    writeln!(out, "upper_bound: {ub:.6}")?;
    writeln!(out, "gap_pct: {:.6}", 100.0 * (ub - lifetime) / ub)?;
    writeln!(out, "covers_generated: {}", result.covers_generated)?;
    writeln!(out, "schedule_entries: {}", result.schedule.len())?;
    writeln!(out, "runtime_ms: {runtime_ms:.3}")?;
    if let Some(path) = &args.schedule_out {
        std::fs::write(path, result.schedule.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "schedule written to {}", path.display())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(args: OracleArgs, out: &mut impl Write) -> Result<ExitCode> {
    let (instance, matrix) = load_instance(&args.instance)?;
    let covers = enumerate_minimal_covers(&matrix, args.limit)
        .context("minimal-cover enumeration aborted")?;
    let solution = lp_optimal_lifetime(&covers, instance.battery());
    writeln!(out, "minimal_covers: {}", covers.len())?;
    writeln!(out, "optimum: {:.6}", solution.objective)?;
    writeln!(
        out,
        "upper_bound: {:.6}",
        upper_bound(&matrix, instance.battery())
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_exp(args: ExpArgs, out: &mut impl Write) -> Result<ExitCode> {
    let mut spec = ExperimentSpec::preset(args.id, args.seed, args.out)?;
    if let Some(reps) = args.reps {
        spec.replications = reps;
    }
    spec.zero_timing = args.no_timing;
    spec.validate()?;
    let started = Instant::now();
    let result = run_experiment(&spec)?;
    let paths = write_outputs(&spec, &result)?;
    for path in &paths {
        writeln!(out, "wrote {}", path.display())?;
    }
    writeln!(
        out,
        "ran {} solves in {:.1}s",
        result.records.len(),
        started.elapsed().as_secs_f64()
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: ValidateArgs, out: &mut impl Write) -> Result<ExitCode> {
    let (instance, matrix) = load_instance(&args.instance)?;
    let text = std::fs::read_to_string(&args.schedule)
        .with_context(|| format!("reading schedule {}", args.schedule.display()))?;
    let schedule = Schedule::from_json(&text)
        .with_context(|| format!("parsing schedule {}", args.schedule.display()))?;
    let report = validate_schedule(&matrix, instance.battery(), &schedule, DEFAULT_TOLERANCE);
    writeln!(out, "{report}")?;
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}
