//! Crate-wide error type.

use std::io;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numerics, solvers, and the benchmark harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands of a vector/matrix operation have incompatible lengths.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A parameter or construction argument violates its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A point handed to a feasibility-checked operation lies outside the
    /// region by more than the membership tolerance.
    #[error("point is infeasible (constraint violation {violation:.3e})")]
    InfeasiblePoint { violation: f64 },

    /// Armijo backtracking exhausted its trial budget without finding a step
    /// with sufficient decrease.
    #[error(
        "line search failed at iteration {iteration}: no sufficient decrease \
         within {max_backtracks} backtracks"
    )]
    LineSearchFailure { iteration: u64, max_backtracks: u32 },

    /// The benchmark configuration is inconsistent (e.g. solver/suite combo).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Asked to emit a report with no rows.
    #[error("empty report")]
    EmptyReport,

    /// I/O failure while writing or reading a report; carries the path.
    #[error("i/o error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    /// A CSV document could not be parsed back into report rows.
    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },
}
