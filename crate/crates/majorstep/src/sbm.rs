//! Adaptive step-size solver without line search.
//!
//! Each iteration takes one trial step `z = x + lambda * (y(x) - x)` and one
//! goal-function evaluation. If the trial achieves the sufficient decrease
//! `f(z) <= f(x) - beta * lambda * ||d||^2`, it is accepted and the step size
//! may stay or grow up to the current majorant `tau_l = tau0 * sigma^l`.
//! Otherwise the majorant index advances (shrinking the admissible steps
//! geometrically) and the trial is still taken as the next iterate unless it
//! violates the level guard `gamma`, in which case the run falls back to the
//! best point seen so far. Function values along the accepted sequence may
//! therefore increase temporarily; only the majorant sequence is monotone.
//!
//! Cost per iteration: one direction-map query plus exactly one goal-function
//! evaluation, so `kf = 1 + iterations` (the extra one is `f(x0)`).

use std::fmt;
use std::time::{Duration, Instant};

use crate::baselines::{ArmijoParams, DivergentSeriesParams};
use crate::directions::DirectionMap;
use crate::error::{Error, Result};
use crate::numerics::{axpy, Vector, FEASIBILITY_TOL};
use crate::problems::GoalFunction;

/// Range check rejecting NaN.
pub(crate) fn in_open_unit(x: f64) -> bool {
    x > 0.0 && x < 1.0
}

/// Positivity check rejecting NaN.
pub(crate) fn positive(x: f64) -> bool {
    x > 0.0
}

/// How the step size reacts to an accepted trial. Any value in
/// `[lambda_k, tau_l]` is admissible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepPolicy {
    /// Keep `lambda` unchanged.
    #[default]
    Hold,
    /// Grow by `1/sigma`, capped at the current majorant.
    Grow,
}

impl fmt::Display for StepPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepPolicy::Hold => write!(f, "hold"),
            StepPolicy::Grow => write!(f, "grow"),
        }
    }
}

impl std::str::FromStr for StepPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hold" => Ok(StepPolicy::Hold),
            "grow" => Ok(StepPolicy::Grow),
            other => Err(Error::InvalidArgument(format!(
                "unknown step policy `{other}` (expected `hold` or `grow`)"
            ))),
        }
    }
}

/// Parameters of the adaptive step-size solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SbmParams {
    /// Sufficient-decrease coefficient, in `(0, 1)`; must stay below the
    /// direction map's descent modulus `tau`.
    pub beta: f64,
    /// Initial step size, in `(0, tau0]`.
    pub lambda0: f64,
    /// First majorant value, in `(0, 1)`; the majorant sequence is
    /// `tau_l = tau0 * sigma^l`.
    pub tau0: f64,
    /// Majorant ratio, in `(0, 1)`.
    pub sigma: f64,
    /// Level guard: trial points with `f > gamma` are rejected to the best
    /// point so far. Use `f64::INFINITY` on bounded feasible sets.
    pub gamma: f64,
    /// Stopping threshold on the residual `||x - y(x)||`.
    pub eps: f64,
    /// Iteration cap; hitting it is a reported outcome, not an error.
    pub max_iter: u64,
    /// Step-size reaction to accepted trials.
    pub policy: StepPolicy,
}

impl Default for SbmParams {
    fn default() -> Self {
        SbmParams {
            beta: 0.5,
            lambda0: 0.9,
            tau0: 0.9,
            sigma: 0.9,
            gamma: f64::INFINITY,
            eps: 0.01,
            max_iter: 100_000,
            policy: StepPolicy::Hold,
        }
    }
}

impl SbmParams {
    pub fn validate(&self) -> Result<()> {
        if !in_open_unit(self.beta) {
            return Err(Error::InvalidArgument(format!(
                "beta must lie in (0,1), got {}",
                self.beta
            )));
        }
        if !in_open_unit(self.tau0) {
            return Err(Error::InvalidArgument(format!(
                "tau0 must lie in (0,1), got {}",
                self.tau0
            )));
        }
        if self.lambda0 <= 0.0 || self.lambda0 > self.tau0 || self.lambda0.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "lambda0 must lie in (0, tau0], got {} with tau0 {}",
                self.lambda0, self.tau0
            )));
        }
        if !in_open_unit(self.sigma) {
            return Err(Error::InvalidArgument(format!(
                "sigma must lie in (0,1), got {}",
                self.sigma
            )));
        }
        if self.gamma.is_nan() {
            return Err(Error::InvalidArgument("gamma must not be NaN".into()));
        }
        if !positive(self.eps) {
            return Err(Error::InvalidArgument(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Residual dropped to `eps` or below.
    ResidualReached,
    /// `y(x) = x` held exactly.
    ExactFixedPoint,
    /// Iteration cap reached.
    MaxIter,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::ResidualReached => write!(f, "residual"),
            Termination::ExactFixedPoint => write!(f, "fixed_point"),
            Termination::MaxIter => write!(f, "max_iter"),
        }
    }
}

/// Parameters actually used by a run, echoed into [`SolverRun`].
#[derive(Clone, Debug, PartialEq)]
pub enum RunParams {
    Sbm(SbmParams),
    Armijo(ArmijoParams),
    DivergentSeries(DivergentSeriesParams),
}

/// One trial step of any solver, as recorded in the run trace.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    /// Step size used for the trial.
    pub lambda: f64,
    /// Majorant index `l` at trial time (adaptive solver only).
    pub majorant_index: u64,
    /// Residual `||x - y(x)||` at the iterate the trial started from.
    pub residual: f64,
    /// `||d||^2` of the direction `d = y(x) - x`.
    pub direction_norm_sq: f64,
    /// Goal value at the starting iterate.
    pub f_current: f64,
    /// Goal value at the trial point (Armijo: at the accepted trial).
    pub f_trial: f64,
    /// Armijo only: goal value of the last rejected trial, at step
    /// `lambda / theta`; `None` when the full step was accepted.
    pub rejected_trial: Option<f64>,
    /// Whether the sufficient-decrease test passed.
    pub accepted: bool,
    /// Armijo only: number of rejected trials before acceptance.
    pub backtracks: u64,
    /// Goal value at the next iterate after guard handling.
    pub f_next: f64,
    /// Goal value at the best point after this iteration.
    pub f_best: f64,
}

/// Outcome of one solver run: termination, counters, final point, and the
/// per-iteration trace.
#[derive(Clone, Debug)]
pub struct SolverRun {
    pub params: RunParams,
    pub termination: Termination,
    /// Number of trial steps taken.
    pub iterations: u64,
    /// Total goal-function evaluations, including the one at the start point.
    pub kf: u64,
    pub final_x: Vector,
    pub final_residual: f64,
    pub final_f: f64,
    pub wall_time: Duration,
    pub trace: Vec<IterationRecord>,
}

/// Step-size update after an accepted trial: `Hold` keeps `lambda`, `Grow`
/// takes `min(lambda / sigma, tau_l)`.
pub fn step_success_update(lambda: f64, tau_l: f64, sigma: f64, policy: StepPolicy) -> f64 {
    match policy {
        StepPolicy::Hold => lambda,
        StepPolicy::Grow => (lambda / sigma).min(tau_l),
    }
}

/// Step-size update after a failed trial: the majorant index advances and
/// `lambda` is capped by the new majorant `tau0 * sigma^(l+1)`. With
/// `lambda0 = tau0` and the `Hold` policy this is exactly
/// `lambda <- sigma * lambda`.
pub fn step_failure_update(lambda: f64, majorant_index: u64, tau0: f64, sigma: f64) -> (f64, u64) {
    let next_index = majorant_index + 1;
    let tau_next = tau0 * sigma.powi(next_index as i32);
    (lambda.min(tau_next), next_index)
}

/// Runs the adaptive step-size solver from `x0`.
///
/// `objective` must be the counted goal function (a counting wrapper over a
/// smooth objective, or a gap function), and `map` the matching direction
/// map. Requires `beta < map.tau()`, a feasible `x0`, and `f(x0) <= gamma`.
pub fn sbm_solve<F: GoalFunction + ?Sized>(
    objective: &F,
    map: &DirectionMap<'_>,
    params: &SbmParams,
    x0: &Vector,
) -> Result<SolverRun> {
    params.validate()?;
    if params.beta >= map.tau() || map.tau().is_nan() {
        return Err(Error::InvalidArgument(format!(
            "beta {} must stay below the direction map's descent modulus {}",
            params.beta,
            map.tau()
        )));
    }
    if x0.len() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            got: x0.len(),
        });
    }
    let violation = map.region().violation(x0)?;
    if violation > FEASIBILITY_TOL {
        return Err(Error::InfeasiblePoint { violation });
    }

    let started = Instant::now();
    let kf_start = objective.evaluations();
    let f0 = objective.value(x0)?;
    if f0 > params.gamma || f0.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "f(x0) = {f0} exceeds the level guard gamma = {}",
            params.gamma
        )));
    }

    let mut x = x0.clone();
    let mut f_x = f0;
    let mut best = x0.clone();
    let mut f_best = f0;
    let mut lambda = params.lambda0;
    let mut majorant_index: u64 = 0;
    let mut trace: Vec<IterationRecord> = Vec::new();

    let (termination, final_residual) = loop {
        let y = map.point(&x)?;
        let d = y.sub(&x)?;
        let d_norm_sq = d.dot(&d)?;
        let residual = d_norm_sq.sqrt();
        if residual == 0.0 {
            break (Termination::ExactFixedPoint, residual);
        }
        if residual <= params.eps {
            break (Termination::ResidualReached, residual);
        }
        if trace.len() as u64 >= params.max_iter {
            break (Termination::MaxIter, residual);
        }

        let z = axpy(lambda, &d, &x)?;
        let f_trial = objective.value(&z)?;
        let lambda_used = lambda;
        let index_used = majorant_index;
        let f_current = f_x;
        let tau_l = params.tau0 * params.sigma.powi(majorant_index as i32);
        let accepted = f_trial <= f_x - params.beta * lambda * d_norm_sq;

        if accepted {
            x = z;
            f_x = f_trial;
            lambda = step_success_update(lambda, tau_l, params.sigma, params.policy);
        } else {
            let (next_lambda, next_index) =
                step_failure_update(lambda, majorant_index, params.tau0, params.sigma);
            lambda = next_lambda;
            majorant_index = next_index;
            if f_trial <= params.gamma {
                x = z;
                f_x = f_trial;
            } else {
                // Guard violated: fall back to the best point so far.
                x = best.clone();
                f_x = f_best;
            }
        }
        if f_x < f_best {
            best = x.clone();
            f_best = f_x;
        }

        trace.push(IterationRecord {
            lambda: lambda_used,
            majorant_index: index_used,
            residual,
            direction_norm_sq: d_norm_sq,
            f_current,
            f_trial,
            rejected_trial: None,
            accepted,
            backtracks: 0,
            f_next: f_x,
            f_best,
        });
    };

    Ok(SolverRun {
        params: RunParams::Sbm(params.clone()),
        termination,
        iterations: trace.len() as u64,
        kf: objective.evaluations() - kf_start,
        final_x: x,
        final_residual,
        final_f: f_x,
        wall_time: started.elapsed(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::DirectionMap;
    use crate::numerics::FeasibleRegion;
    use crate::problems::{
        build_quadratic, CountingObjective, QuadraticRegionKind, SmoothObjective,
    };

    #[test]
    fn hold_keeps_lambda() {
        assert_eq!(step_success_update(0.9, 0.9, 0.9, StepPolicy::Hold), 0.9);
    }

    #[test]
    fn grow_divides_by_sigma_and_caps_at_the_majorant() {
        assert_eq!(
            step_success_update(0.5, 0.9, 0.9, StepPolicy::Grow),
            (0.5f64 / 0.9).min(0.9)
        );
        assert!((step_success_update(0.5, 0.9, 0.9, StepPolicy::Grow) - 0.5556).abs() < 1e-4);
        assert_eq!(step_success_update(0.89, 0.9, 0.9, StepPolicy::Grow), 0.9);
    }

    #[test]
    fn failure_update_advances_the_majorant() {
        let (lambda, l) = step_failure_update(0.9, 0, 0.9, 0.9);
        assert!((lambda - 0.81).abs() < 1e-15);
        assert_eq!(l, 1);
        // A lambda already below the new majorant is kept.
        let (lambda, l) = step_failure_update(0.5, 1, 0.9, 0.9);
        assert_eq!(lambda, 0.5);
        assert_eq!(l, 2);
    }

    #[test]
    fn repeated_failures_decay_lambda_geometrically() {
        let mut lambda = 0.9;
        let mut l = 0;
        for _ in 0..200 {
            let next = step_failure_update(lambda, l, 0.9, 0.9);
            lambda = next.0;
            l = next.1;
        }
        assert!((lambda - 0.9 * 0.9f64.powi(200)).abs() <= 1e-12 * lambda.abs().max(1e-300));
        assert!(lambda < 1e-9);
    }

    #[test]
    fn near_stationary_start_stops_before_any_trial() {
        let problem = build_quadratic(3, 5, QuadraticRegionKind::Orthant).unwrap();
        let counted = CountingObjective::new(&problem);
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        let x0 = Vector::from_fn(5, |j| 1.0 + 1e-6 * (j as f64 + 1.0));
        let run = sbm_solve(&counted, &map, &SbmParams::default(), &x0).unwrap();
        assert_eq!(run.termination, Termination::ResidualReached);
        assert_eq!(run.iterations, 0);
        assert_eq!(run.kf, 1);
    }

    #[test]
    fn exact_fixed_point_is_reported_separately() {
        let problem = build_quadratic(3, 5, QuadraticRegionKind::Orthant).unwrap();
        let counted = CountingObjective::new(&problem);
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        let ones = Vector::filled(5, 1.0);
        let run = sbm_solve(&counted, &map, &SbmParams::default(), &ones).unwrap();
        assert_eq!(run.termination, Termination::ExactFixedPoint);
        assert_eq!(run.iterations, 0);
        assert_eq!(run.kf, 1);
        assert_eq!(run.final_residual, 0.0);
    }

    #[test]
    fn solves_the_small_orthant_problem() {
        let problem = build_quadratic(2, 5, QuadraticRegionKind::Orthant).unwrap();
        let counted = CountingObjective::new(&problem);
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        let gamma = problem.value(problem.start()).unwrap() + 1.0;
        let params = SbmParams {
            gamma,
            ..SbmParams::default()
        };
        let run = sbm_solve(&counted, &map, &params, problem.start()).unwrap();
        assert_eq!(run.termination, Termination::ResidualReached);
        assert!(run.final_residual <= 0.01);
        assert_eq!(run.kf, run.iterations + 1);
        assert!((10..=40).contains(&run.iterations), "it = {}", run.iterations);
    }

    #[test]
    fn invalid_starts_are_rejected() {
        let problem = build_quadratic(2, 5, QuadraticRegionKind::Orthant).unwrap();
        let counted = CountingObjective::new(&problem);
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        // Infeasible start.
        let outside = Vector::filled(5, -1.0);
        assert!(matches!(
            sbm_solve(&counted, &map, &SbmParams::default(), &outside),
            Err(Error::InfeasiblePoint { .. })
        ));
        // Start above the level guard.
        let params = SbmParams {
            gamma: 0.0,
            ..SbmParams::default()
        };
        assert!(sbm_solve(&counted, &map, &params, problem.start()).is_err());
        // Beta not below the descent modulus.
        let weak = DirectionMap::gradient_projection(&problem, problem.region(), 0.3).unwrap();
        assert!(sbm_solve(&counted, &weak, &SbmParams::default(), problem.start()).is_err());
    }

    #[test]
    fn parameter_ranges_are_validated() {
        for params in [
            SbmParams { beta: 0.0, ..SbmParams::default() },
            SbmParams { beta: 1.0, ..SbmParams::default() },
            SbmParams { lambda0: 0.0, ..SbmParams::default() },
            SbmParams { lambda0: 0.95, ..SbmParams::default() },
            SbmParams { tau0: 1.0, ..SbmParams::default() },
            SbmParams { sigma: 0.0, ..SbmParams::default() },
            SbmParams { sigma: 1.0, ..SbmParams::default() },
            SbmParams { eps: 0.0, ..SbmParams::default() },
            SbmParams { max_iter: 0, ..SbmParams::default() },
        ] {
            assert!(params.validate().is_err(), "{params:?}");
        }
        assert!(SbmParams::default().validate().is_ok());
    }

    #[test]
    fn max_iter_is_a_reported_outcome() {
        let problem = build_quadratic(2, 5, QuadraticRegionKind::Orthant).unwrap();
        let counted = CountingObjective::new(&problem);
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        let params = SbmParams {
            max_iter: 3,
            ..SbmParams::default()
        };
        let run = sbm_solve(&counted, &map, &params, problem.start()).unwrap();
        assert_eq!(run.termination, Termination::MaxIter);
        assert_eq!(run.iterations, 3);
        assert_eq!(run.kf, 4);
    }

    /// Objective with one steep coordinate: the first full-size trials
    /// overshoot far above the guard, exercising the fall-back-to-best branch.
    struct SteepBowl;

    impl SmoothObjective for SteepBowl {
        fn dim(&self) -> usize {
            2
        }

        fn value(&self, x: &Vector) -> Result<f64> {
            Ok(50.0 * x[0] * x[0] + 0.5 * x[1] * x[1])
        }

        fn gradient(&self, x: &Vector) -> Result<Vector> {
            Ok(Vector::from_vec(vec![100.0 * x[0], x[1]]))
        }
    }

    #[test]
    fn level_guard_falls_back_to_the_best_point() {
        let problem = SteepBowl;
        let counted = CountingObjective::new(&problem);
        let region = FeasibleRegion::whole_space(2);
        let map = DirectionMap::gradient_projection(&problem, &region, 1.0).unwrap();
        let x0 = Vector::from_vec(vec![1.0, 1.0]);
        let gamma = problem.value(&x0).unwrap() + 1.0;
        let params = SbmParams {
            beta: 0.5,
            gamma,
            ..SbmParams::default()
        };
        let run = sbm_solve(&counted, &map, &params, &x0).unwrap();
        assert_eq!(run.termination, Termination::ResidualReached);
        let guarded_rejections = run
            .trace
            .iter()
            .filter(|r| !r.accepted && r.f_trial > gamma)
            .count();
        assert!(guarded_rejections > 0, "expected guard-violating trials");
        for record in &run.trace {
            assert!(record.f_next <= gamma, "stored iterate above the guard");
            assert!(record.f_best <= record.f_next + 1e-15);
        }
    }

    #[test]
    fn reruns_are_bitwise_identical() {
        let problem = build_quadratic(4, 5, QuadraticRegionKind::Box).unwrap();
        let map =
            DirectionMap::gradient_projection(&problem, problem.region(), 1.0).unwrap();
        let run_once = || {
            let counted = CountingObjective::new(&problem);
            sbm_solve(&counted, &map, &SbmParams::default(), problem.start()).unwrap()
        };
        let a = run_once();
        let b = run_once();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.final_x, b.final_x);
        assert_eq!(a.kf, b.kf);
    }
}
