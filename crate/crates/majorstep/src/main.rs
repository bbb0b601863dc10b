//! Command-line benchmark harness.
//!
//! Two modes: `run` executes one solver over a configurable problem grid,
//! `reproduce` reruns a full built-in benchmark table. Exit codes: 0 when
//! every row converged, 2 when any row hit its iteration cap or errored,
//! 1 on configuration or I/O problems.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use majorstep::bench::{
    self, BenchConfig, GridSize, OutputFormat, ProblemFamily, SolverChoice, SolverOverrides,
    Suite,
};
use majorstep::sbm::StepPolicy;

const OUT_DIR_ENV: &str = "MAJORSTEP_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "majorstep",
    version,
    about = "Benchmark harness for projection solvers with adaptive step sizes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver over a problem grid
    Run(RunArgs),
    /// Rerun the full grid of a built-in benchmark table
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Test1,
    Test2,
    Test3,
    Custom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    QuadraticOrthant,
    QuadraticBox,
    Vi,
}

impl From<FamilyArg> for ProblemFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::QuadraticOrthant => ProblemFamily::QuadraticOrthant,
            FamilyArg::QuadraticBox => ProblemFamily::QuadraticBox,
            FamilyArg::Vi => ProblemFamily::Vi,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverArg {
    Sbm,
    Armijo,
    Divseries,
}

impl From<SolverArg> for SolverChoice {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Sbm => SolverChoice::Sbm,
            SolverArg::Armijo => SolverChoice::Armijo,
            SolverArg::Divseries => SolverChoice::DivSeries,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    Hold,
    Grow,
}

impl From<PolicyArg> for StepPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Hold => StepPolicy::Hold,
            PolicyArg::Grow => StepPolicy::Grow,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Table,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Benchmark suite (the custom suite picks its generator via --family)
    #[arg(long, value_enum)]
    suite: SuiteArg,

    /// Problem generator for --suite custom
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,

    /// Solver to run
    #[arg(long, value_enum)]
    solver: SolverArg,

    /// Row counts of the quadratic problems (comma separated, paired with --n)
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,

    /// Problem dimensions (comma separated)
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,

    /// Sufficient-decrease coefficient
    #[arg(long)]
    beta: Option<f64>,

    /// Scaling of the direction map
    #[arg(long)]
    alpha: Option<f64>,

    /// Initial step size (also the first majorant value)
    #[arg(long)]
    lambda0: Option<f64>,

    /// Majorant ratio
    #[arg(long)]
    sigma: Option<f64>,

    /// Backtracking ratio of the Armijo solver
    #[arg(long)]
    theta: Option<f64>,

    /// Level guard (accepts `inf`)
    #[arg(long)]
    gamma: Option<f64>,

    /// Residual stopping threshold
    #[arg(long)]
    eps: Option<f64>,

    /// Iteration cap
    #[arg(long)]
    max_iter: Option<u64>,

    /// Step-size policy on accepted trials
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table to rerun: 1, 2, or 3
    #[arg(long)]
    table: u8,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,

    /// Output file; standard output when omitted. Relative paths land in
    /// $MAJORSTEP_OUT_DIR when that variable is set.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_sizes(suite: Suite, m: &[usize], n: &[usize]) -> Result<Vec<GridSize>, String> {
    match suite.family() {
        ProblemFamily::Vi => {
            if !m.is_empty() {
                return Err("the vi family is sized by --n alone".into());
            }
            Ok(n.iter().map(|&k| GridSize::square(k)).collect())
        }
        _ => {
            if m.len() != n.len() {
                return Err(format!(
                    "--m and --n must pair up, got {} and {} values",
                    m.len(),
                    n.len()
                ));
            }
            Ok(m.iter()
                .zip(n)
                .map(|(&m, &n)| GridSize { m, n })
                .collect())
        }
    }
}

fn run_command(args: &RunArgs) -> Result<i32, String> {
    let suite = match args.suite {
        SuiteArg::Test1 => Suite::Test1,
        SuiteArg::Test2 => Suite::Test2,
        SuiteArg::Test3 => Suite::Test3,
        SuiteArg::Custom => {
            let family = args
                .family
                .ok_or_else(|| "--suite custom requires --family".to_string())?;
            Suite::Custom(family.into())
        }
    };
    let sizes = build_sizes(suite, &args.m, &args.n)?;
    let config = BenchConfig {
        suite,
        solver: args.solver.into(),
        sizes,
        overrides: SolverOverrides {
            beta: args.beta,
            alpha: args.alpha,
            lambda0: args.lambda0,
            sigma: args.sigma,
            theta: args.theta,
            gamma: args.gamma,
            eps: args.eps,
            max_iter: args.max_iter,
            policy: args.policy.map(Into::into),
        },
        format: args.output.format.into(),
        out: args.output.out.clone(),
    };
    let report = bench::run_suite(&config).map_err(|e| e.to_string())?;
    emit_report(&report, config.format, config.out)
}

fn reproduce_command(args: &ReproduceArgs) -> Result<i32, String> {
    let report = bench::reproduce_table(args.table).map_err(|e| e.to_string())?;
    emit_report(&report, args.output.format.into(), args.output.out.clone())
}

fn emit_report(
    report: &bench::BenchReport,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<i32, String> {
    let out_dir = std::env::var(OUT_DIR_ENV).ok();
    let target = bench::resolve_out_path(out, out_dir.as_deref());
    bench::emit(report, format, target.as_deref()).map_err(|e| e.to_string())?;
    Ok(bench::report_exit_code(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Reproduce(args) => reproduce_command(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
