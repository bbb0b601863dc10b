//! Benchmark harness: builds the bundled problem suites, runs solver grids,
//! and emits the results as CSV or an aligned text table.
//!
//! Three suites are built in. Suites 1 and 2 minimize the least-squares
//! objective over the nonnegative orthant and the box `[-5,5]^n`; suite 3
//! solves the strongly monotone variational inequality on `[1,6]^n` through
//! its gap function. `reproduce_table` runs the full grid of a suite with the
//! canonical parameters; `run_suite` runs one solver over a configurable grid.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::baselines::{
    armijo_solve, divergent_series_solve, ArmijoParams, DivergentSeriesParams,
};
use crate::directions::{DirectionMap, GapFunction};
use crate::error::{Error, Result};
use crate::problems::{
    build_quadratic, build_vi, CountingObjective, QuadraticRegionKind, SmoothObjective,
};
use crate::sbm::{sbm_solve, SbmParams, SolverRun, StepPolicy, Termination};

/// Which problem generator a grid cell uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemFamily {
    /// Least squares over the nonnegative orthant (suite 1).
    QuadraticOrthant,
    /// Least squares over the box `[-5,5]^n` (suite 2).
    QuadraticBox,
    /// Variational inequality on `[1,6]^n` via its gap function (suite 3).
    Vi,
}

impl fmt::Display for ProblemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemFamily::QuadraticOrthant => write!(f, "quadratic-orthant"),
            ProblemFamily::QuadraticBox => write!(f, "quadratic-box"),
            ProblemFamily::Vi => write!(f, "vi"),
        }
    }
}

/// A benchmark suite: one of the three canonical ones, or a custom grid over
/// a built-in generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Test1,
    Test2,
    Test3,
    Custom(ProblemFamily),
}

impl Suite {
    pub fn family(&self) -> ProblemFamily {
        match self {
            Suite::Test1 => ProblemFamily::QuadraticOrthant,
            Suite::Test2 => ProblemFamily::QuadraticBox,
            Suite::Test3 => ProblemFamily::Vi,
            Suite::Custom(family) => *family,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::Test1 => write!(f, "test1"),
            Suite::Test2 => write!(f, "test2"),
            Suite::Test3 => write!(f, "test3"),
            Suite::Custom(family) => write!(f, "custom-{family}"),
        }
    }
}

/// The solver driving a grid cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    /// Adaptive majorant step sizes, no line search.
    Sbm,
    /// Armijo backtracking.
    Armijo,
    /// Divergent-series step sizes (smooth objectives only).
    DivSeries,
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverChoice::Sbm => write!(f, "sbm"),
            SolverChoice::Armijo => write!(f, "armijo"),
            SolverChoice::DivSeries => write!(f, "divseries"),
        }
    }
}

/// One grid cell size. For the variational-inequality family only `n` is
/// meaningful and `m` is reported as `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSize {
    pub m: usize,
    pub n: usize,
}

impl GridSize {
    pub fn square(n: usize) -> Self {
        GridSize { m: n, n }
    }
}

/// Optional overrides of the per-suite default solver parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolverOverrides {
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    /// Sets both the initial step and the first majorant value.
    pub lambda0: Option<f64>,
    pub sigma: Option<f64>,
    pub theta: Option<f64>,
    pub gamma: Option<f64>,
    pub eps: Option<f64>,
    pub max_iter: Option<u64>,
    pub policy: Option<StepPolicy>,
}

/// Output flavor of [`emit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Table,
}

/// A full benchmark request.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub suite: Suite,
    pub solver: SolverChoice,
    /// Grid sizes; empty means the suite's default grid.
    pub sizes: Vec<GridSize>,
    pub overrides: SolverOverrides,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Row-level outcome; `Error` marks cells whose solver failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOutcome {
    Residual,
    FixedPoint,
    MaxIter,
    Error,
}

impl From<Termination> for RowOutcome {
    fn from(t: Termination) -> Self {
        match t {
            Termination::ResidualReached => RowOutcome::Residual,
            Termination::ExactFixedPoint => RowOutcome::FixedPoint,
            Termination::MaxIter => RowOutcome::MaxIter,
        }
    }
}

impl fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOutcome::Residual => write!(f, "residual"),
            RowOutcome::FixedPoint => write!(f, "fixed_point"),
            RowOutcome::MaxIter => write!(f, "max_iter"),
            RowOutcome::Error => write!(f, "error"),
        }
    }
}

impl std::str::FromStr for RowOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "residual" => Ok(RowOutcome::Residual),
            "fixed_point" => Ok(RowOutcome::FixedPoint),
            "max_iter" => Ok(RowOutcome::MaxIter),
            "error" => Ok(RowOutcome::Error),
            other => Err(Error::InvalidArgument(format!(
                "unknown termination `{other}`"
            ))),
        }
    }
}

/// One report line, mirroring the CSV schema.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub suite: String,
    pub solver: String,
    pub m: usize,
    pub n: usize,
    pub it: u64,
    pub kf: u64,
    pub final_residual: f64,
    pub final_f: f64,
    pub termination: RowOutcome,
    pub wall_ms: f64,
}

/// Report metadata: crate version and an echo of the parameters the solvers
/// actually received.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchMetadata {
    pub version: String,
    pub parameters: Vec<(String, String)>,
}

/// The assembled benchmark report.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub metadata: BenchMetadata,
}

pub const CSV_HEADER: &str = "suite,solver,m,n,it,kf,final_residual,final_f,termination,wall_ms";

fn suite_label(suite: &Suite) -> String {
    match suite {
        Suite::Test1 => "test1".into(),
        Suite::Test2 => "test2".into(),
        Suite::Test3 => "test3".into(),
        Suite::Custom(family) => format!("custom-{family}"),
    }
}

/// Default grid of a family: the five rectangular sizes for the quadratic
/// suites, the eight square sizes for the variational inequality.
pub fn default_grid(family: ProblemFamily) -> Vec<GridSize> {
    match family {
        ProblemFamily::QuadraticOrthant | ProblemFamily::QuadraticBox => {
            [(2, 5), (4, 5), (5, 10), (25, 50), (50, 100)]
                .into_iter()
                .map(|(m, n)| GridSize { m, n })
                .collect()
        }
        ProblemFamily::Vi => [5, 10, 20, 50, 100, 200, 500, 1000]
            .into_iter()
            .map(GridSize::square)
            .collect(),
    }
}

fn default_beta(family: ProblemFamily) -> f64 {
    match family {
        ProblemFamily::Vi => 0.4,
        _ => 0.5,
    }
}

fn resolve_sbm(family: ProblemFamily, overrides: &SolverOverrides, gamma: f64) -> SbmParams {
    let lambda0 = overrides.lambda0.unwrap_or(0.9);
    SbmParams {
        beta: overrides.beta.unwrap_or_else(|| default_beta(family)),
        lambda0,
        tau0: lambda0,
        sigma: overrides.sigma.unwrap_or(0.9),
        gamma,
        eps: overrides.eps.unwrap_or(0.01),
        max_iter: overrides.max_iter.unwrap_or(100_000),
        policy: overrides.policy.unwrap_or(StepPolicy::Hold),
    }
}

fn resolve_armijo(family: ProblemFamily, overrides: &SolverOverrides) -> ArmijoParams {
    ArmijoParams {
        beta: overrides.beta.unwrap_or_else(|| default_beta(family)),
        theta: overrides.theta.unwrap_or(0.5),
        max_backtracks: 60,
        eps: overrides.eps.unwrap_or(0.01),
        max_iter: overrides.max_iter.unwrap_or(100_000),
    }
}

fn resolve_divseries(overrides: &SolverOverrides) -> DivergentSeriesParams {
    DivergentSeriesParams {
        eps: overrides.eps.unwrap_or(0.01),
        max_iter: overrides.max_iter.unwrap_or(100_000),
    }
}

/// Runs one grid cell to completion and returns the full solver run,
/// including its trace.
pub fn execute_cell(
    family: ProblemFamily,
    size: GridSize,
    solver: SolverChoice,
    overrides: &SolverOverrides,
) -> Result<SolverRun> {
    let alpha = overrides.alpha.unwrap_or(1.0);
    match family {
        ProblemFamily::QuadraticOrthant | ProblemFamily::QuadraticBox => {
            let kind = if family == ProblemFamily::QuadraticOrthant {
                QuadraticRegionKind::Orthant
            } else {
                QuadraticRegionKind::Box
            };
            let problem = build_quadratic(size.m, size.n, kind)?;
            let counted = CountingObjective::new(&problem);
            match solver {
                SolverChoice::Sbm => {
                    // On the unbounded orthant the level guard defaults to
                    // f(x0) + 1; bounded sets run unguarded.
                    let gamma = match overrides.gamma {
                        Some(g) => g,
                        None if family == ProblemFamily::QuadraticOrthant => {
                            problem.value(problem.start())? + 1.0
                        }
                        None => f64::INFINITY,
                    };
                    let params = resolve_sbm(family, overrides, gamma);
                    let map = DirectionMap::gradient_projection(
                        &problem,
                        problem.region(),
                        alpha,
                    )?;
                    sbm_solve(&counted, &map, &params, problem.start())
                }
                SolverChoice::Armijo => {
                    let params = resolve_armijo(family, overrides);
                    let map = DirectionMap::gradient_projection(
                        &problem,
                        problem.region(),
                        alpha,
                    )?;
                    armijo_solve(&counted, &map, &params, problem.start())
                }
                SolverChoice::DivSeries => {
                    let params = resolve_divseries(overrides);
                    divergent_series_solve(
                        &counted,
                        problem.region(),
                        &params,
                        problem.start(),
                    )
                }
            }
        }
        ProblemFamily::Vi => {
            let problem = build_vi(size.n)?;
            let map = DirectionMap::vi_natural(&problem, problem.region(), alpha)?;
            let gap = GapFunction::new(&map)?;
            match solver {
                SolverChoice::Sbm => {
                    let gamma = overrides.gamma.unwrap_or(f64::INFINITY);
                    let params = resolve_sbm(family, overrides, gamma);
                    sbm_solve(&gap, &map, &params, problem.start())
                }
                SolverChoice::Armijo => {
                    let params = resolve_armijo(family, overrides);
                    armijo_solve(&gap, &map, &params, problem.start())
                }
                SolverChoice::DivSeries => Err(Error::InvalidConfig(
                    "divseries needs a smooth objective; it cannot run on the vi suite"
                        .into(),
                )),
            }
        }
    }
}

fn row_from_run(
    suite: &str,
    solver: SolverChoice,
    family: ProblemFamily,
    size: GridSize,
    run: &SolverRun,
) -> BenchRow {
    let m = if family == ProblemFamily::Vi { size.n } else { size.m };
    BenchRow {
        suite: suite.to_string(),
        solver: solver.to_string(),
        m,
        n: size.n,
        it: run.iterations,
        kf: run.kf,
        final_residual: run.final_residual,
        final_f: run.final_f,
        termination: run.termination.into(),
        wall_ms: run.wall_time.as_secs_f64() * 1e3,
    }
}

fn error_row(suite: &str, solver: SolverChoice, family: ProblemFamily, size: GridSize) -> BenchRow {
    let m = if family == ProblemFamily::Vi { size.n } else { size.m };
    BenchRow {
        suite: suite.to_string(),
        solver: solver.to_string(),
        m,
        n: size.n,
        it: 0,
        kf: 0,
        final_residual: f64::NAN,
        final_f: f64::NAN,
        termination: RowOutcome::Error,
        wall_ms: 0.0,
    }
}

fn echo_parameters(
    family: ProblemFamily,
    solver: SolverChoice,
    overrides: &SolverOverrides,
) -> Vec<(String, String)> {
    let mut params = vec![("alpha".into(), fmt_value(overrides.alpha.unwrap_or(1.0)))];
    match solver {
        SolverChoice::Sbm => {
            let resolved = resolve_sbm(family, overrides, f64::INFINITY);
            let gamma = match overrides.gamma {
                Some(g) => fmt_value(g),
                None if family == ProblemFamily::QuadraticOrthant => "f(x0)+1".into(),
                None => "inf".into(),
            };
            params.extend([
                ("beta".into(), fmt_value(resolved.beta)),
                ("lambda0".into(), fmt_value(resolved.lambda0)),
                ("tau0".into(), fmt_value(resolved.tau0)),
                ("sigma".into(), fmt_value(resolved.sigma)),
                ("gamma".into(), gamma),
                ("eps".into(), fmt_value(resolved.eps)),
                ("max_iter".into(), resolved.max_iter.to_string()),
                ("policy".into(), resolved.policy.to_string()),
            ]);
        }
        SolverChoice::Armijo => {
            let resolved = resolve_armijo(family, overrides);
            params.extend([
                ("beta".into(), fmt_value(resolved.beta)),
                ("theta".into(), fmt_value(resolved.theta)),
                ("max_backtracks".into(), resolved.max_backtracks.to_string()),
                ("eps".into(), fmt_value(resolved.eps)),
                ("max_iter".into(), resolved.max_iter.to_string()),
            ]);
        }
        SolverChoice::DivSeries => {
            let resolved = resolve_divseries(overrides);
            params.extend([
                ("eps".into(), fmt_value(resolved.eps)),
                ("max_iter".into(), resolved.max_iter.to_string()),
            ]);
        }
    }
    params
}

fn metadata_for(entries: Vec<(String, String)>) -> BenchMetadata {
    BenchMetadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        parameters: entries,
    }
}

/// Runs one solver over the configured grid. Invalid suite/solver pairings
/// fail before any cell runs; per-cell solver failures become `error` rows.
pub fn run_suite(config: &BenchConfig) -> Result<BenchReport> {
    let family = config.suite.family();
    if family == ProblemFamily::Vi && config.solver == SolverChoice::DivSeries {
        return Err(Error::InvalidConfig(
            "divseries needs a smooth objective; it cannot run on the vi suite".into(),
        ));
    }
    let sizes = if config.sizes.is_empty() {
        default_grid(family)
    } else {
        config.sizes.clone()
    };
    let label = suite_label(&config.suite);
    let mut rows = Vec::with_capacity(sizes.len());
    for size in sizes {
        match execute_cell(family, size, config.solver, &config.overrides) {
            Ok(run) => rows.push(row_from_run(&label, config.solver, family, size, &run)),
            Err(Error::InvalidConfig(msg)) => return Err(Error::InvalidConfig(msg)),
            Err(_) => rows.push(error_row(&label, config.solver, family, size)),
        }
    }
    let mut entries = vec![
        ("suite".into(), label),
        ("solver".into(), config.solver.to_string()),
    ];
    entries.extend(echo_parameters(family, config.solver, &config.overrides));
    Ok(BenchReport {
        rows,
        metadata: metadata_for(entries),
    })
}

/// Reruns the full grid of one of the three canonical tables with the
/// canonical parameters. Table 1 runs armijo/sbm/divseries over the orthant
/// suite (the divergent-series runs capped at 5000 iterations), table 2 runs
/// armijo/sbm over the box suite, and table 3 runs armijo/sbm over the
/// variational-inequality suite.
pub fn reproduce_table(table: u8) -> Result<BenchReport> {
    let (suite, solvers): (Suite, &[SolverChoice]) = match table {
        1 => (
            Suite::Test1,
            &[SolverChoice::Armijo, SolverChoice::Sbm, SolverChoice::DivSeries],
        ),
        2 => (Suite::Test2, &[SolverChoice::Armijo, SolverChoice::Sbm]),
        3 => (Suite::Test3, &[SolverChoice::Armijo, SolverChoice::Sbm]),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown table {other} (expected 1, 2, or 3)"
            )))
        }
    };
    let family = suite.family();
    let label = suite_label(&suite);
    let mut rows = Vec::new();
    let mut entries = vec![("suite".into(), label.clone())];
    for &solver in solvers {
        let overrides = table_overrides(table, solver);
        for size in default_grid(family) {
            match execute_cell(family, size, solver, &overrides) {
                Ok(run) => rows.push(row_from_run(&label, solver, family, size, &run)),
                Err(_) => rows.push(error_row(&label, solver, family, size)),
            }
        }
        for (key, value) in echo_parameters(family, solver, &overrides) {
            entries.push((format!("{solver}.{key}"), value));
        }
    }
    Ok(BenchReport {
        rows,
        metadata: metadata_for(entries),
    })
}

/// Canonical per-solver overrides of a table; public so tests can rerun
/// individual cells with the exact table parameters.
pub fn table_overrides(table: u8, solver: SolverChoice) -> SolverOverrides {
    let mut overrides = SolverOverrides::default();
    if table == 1 && solver == SolverChoice::DivSeries {
        overrides.max_iter = Some(5000);
    }
    overrides
}

/// Suggested process exit code for a finished report: 0 when every row
/// terminated at the residual or a fixed point, 2 when any row hit the
/// iteration cap or errored.
pub fn report_exit_code(report: &BenchReport) -> i32 {
    let degraded = report
        .rows
        .iter()
        .any(|r| matches!(r.termination, RowOutcome::MaxIter | RowOutcome::Error));
    if degraded {
        2
    } else {
        0
    }
}

/// Formats a real with six significant digits; integers and specials are
/// rendered exactly.
pub fn fmt_value(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..=5).contains(&exp) {
        format!("{x:.5e}")
    } else {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn row_fields(row: &BenchRow) -> [String; 10] {
    [
        row.suite.clone(),
        row.solver.clone(),
        row.m.to_string(),
        row.n.to_string(),
        row.it.to_string(),
        row.kf.to_string(),
        fmt_value(row.final_residual),
        fmt_value(row.final_f),
        row.termination.to_string(),
        fmt_value(row.wall_ms),
    ]
}

/// Renders the report as RFC-4180 CSV with LF line endings.
pub fn to_csv(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        let fields = row_fields(row);
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Renders the report as an aligned text table preceded by `#` metadata
/// lines; column order matches the CSV.
pub fn to_table(report: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# version {}\n", report.metadata.version));
    for (key, value) in &report.metadata.parameters {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    let all_fields: Vec<[String; 10]> = report.rows.iter().map(row_fields).collect();
    for fields in &all_fields {
        for (w, f) in widths.iter_mut().zip(fields.iter()) {
            *w = (*w).max(f.len());
        }
    }
    let render = |fields: &[String]| -> String {
        fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let header_owned: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    out.push_str(&render(&header_owned));
    out.push('\n');
    for fields in &all_fields {
        out.push_str(&render(fields));
        out.push('\n');
    }
    out
}

/// Writes the report in the requested format to the path (or standard output
/// when no path is given) and returns the number of bytes written.
pub fn emit(report: &BenchReport, format: OutputFormat, out: Option<&Path>) -> Result<u64> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    let text = match format {
        OutputFormat::Csv => to_csv(report),
        OutputFormat::Table => to_table(report),
    };
    match out {
        Some(path) => std::fs::write(path, &text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })?;
        }
    }
    Ok(text.len() as u64)
}

/// Resolves the effective output path: relative paths are joined onto the
/// `MAJORSTEP_OUT_DIR` directory when that variable is set.
pub fn resolve_out_path(out: Option<PathBuf>, out_dir: Option<&str>) -> Option<PathBuf> {
    match (out, out_dir) {
        (Some(path), Some(dir)) if path.is_relative() => Some(Path::new(dir).join(path)),
        (path, _) => path,
    }
}

fn split_csv_line(line: &str, line_no: usize) -> Result<Vec<String>> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        if quoted {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push(c);
            }
        } else if c == '"' && field.is_empty() {
            quoted = true;
        } else if c == ',' {
            fields.push(std::mem::take(&mut field));
        } else {
            field.push(c);
        }
    }
    if quoted {
        return Err(Error::CsvParse {
            line: line_no,
            message: "unterminated quoted field".into(),
        });
    }
    fields.push(field);
    Ok(fields)
}

/// Parses a CSV document produced by [`to_csv`] back into rows.
pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::CsvParse {
                line: 1,
                message: format!("unexpected header `{header}`"),
            })
        }
        None => {
            return Err(Error::CsvParse {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let fields = split_csv_line(line, line_no)?;
        if fields.len() != 10 {
            return Err(Error::CsvParse {
                line: line_no,
                message: format!("expected 10 fields, got {}", fields.len()),
            });
        }
        let parse_err = |message: String| Error::CsvParse {
            line: line_no,
            message,
        };
        rows.push(BenchRow {
            suite: fields[0].clone(),
            solver: fields[1].clone(),
            m: fields[2].parse().map_err(|e| parse_err(format!("m: {e}")))?,
            n: fields[3].parse().map_err(|e| parse_err(format!("n: {e}")))?,
            it: fields[4].parse().map_err(|e| parse_err(format!("it: {e}")))?,
            kf: fields[5].parse().map_err(|e| parse_err(format!("kf: {e}")))?,
            final_residual: fields[6]
                .parse()
                .map_err(|e| parse_err(format!("final_residual: {e}")))?,
            final_f: fields[7]
                .parse()
                .map_err(|e| parse_err(format!("final_f: {e}")))?,
            termination: fields[8].parse()?,
            wall_ms: fields[9]
                .parse()
                .map_err(|e| parse_err(format!("wall_ms: {e}")))?,
        });
    }
    Ok(rows)
}
