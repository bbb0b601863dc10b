//! Projection-type solvers driven by a line-search-free adaptive step-size
//! rule.
//!
//! The core idea: instead of searching along each direction, keep a current
//! step size `lambda` bounded by a majorant sequence `tau_l = tau0 * sigma^l`
//! that tends to zero, and advance the majorant only when a trial step fails
//! a sufficient-decrease test. Accepted iterates need exactly one function
//! evaluation per iteration, and the function values are allowed to rise
//! temporarily, which makes the rule usable for non-smooth and non-convex
//! goals.
//!
//! Two instantiations are provided through [`directions::DirectionMap`]:
//!
//! * gradient projection for smooth objectives over a projectable convex set;
//! * the natural map of a strongly monotone variational inequality, minimized
//!   through its nonnegative gap function ([`directions::GapFunction`]).
//!
//! [`baselines`] holds the two classical comparison rules (Armijo
//! backtracking and divergent-series steps), and [`bench`] the harness that
//! runs all of them over the bundled test suites and reports `it`/`kf`
//! counts. The `majorstep` binary exposes the harness on the command line.
//!
//! ```
//! use majorstep::bench::{execute_cell, GridSize, ProblemFamily, SolverChoice, SolverOverrides};
//!
//! let run = execute_cell(
//!     ProblemFamily::QuadraticOrthant,
//!     GridSize { m: 2, n: 5 },
//!     SolverChoice::Sbm,
//!     &SolverOverrides::default(),
//! )
//! .unwrap();
//! assert!(run.final_residual <= 0.01);
//! ```

pub mod baselines;
pub mod bench;
pub mod directions;
pub mod error;
pub mod numerics;
pub mod problems;
pub mod sbm;

pub use directions::{DirectionMap, DirectionSource, GapFunction};
pub use error::{Error, Result};
pub use numerics::{axpy, DenseMatrix, FeasibleRegion, Vector};
pub use problems::{
    build_quadratic, build_vi, CountingObjective, GoalFunction, QuadraticRegionKind,
    QuadraticTestProblem, SmoothObjective, ViOperator, ViTestProblem,
};
pub use sbm::{sbm_solve, SbmParams, SolverRun, StepPolicy, Termination};
