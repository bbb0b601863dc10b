//! Comparison solvers: Armijo backtracking and the divergent-series rule.
//!
//! Both share the direction maps, the stopping residual, the counted goal
//! function, and [`SolverRun`] with the adaptive solver, so reported `it`/`kf`
//! columns are directly comparable.

use std::time::Instant;

use crate::directions::DirectionMap;
use crate::error::{Error, Result};
use crate::numerics::{axpy, FeasibleRegion, Vector, FEASIBILITY_TOL};
use crate::problems::{CountingObjective, GoalFunction};
use crate::sbm::{in_open_unit, positive, IterationRecord, RunParams, SolverRun, Termination};

/// Parameters of the Armijo backtracking solver.
#[derive(Clone, Debug, PartialEq)]
pub struct ArmijoParams {
    /// Sufficient-decrease coefficient, in `(0, 1)`.
    pub beta: f64,
    /// Backtracking ratio, in `(0, 1)`.
    pub theta: f64,
    /// Trial budget per iteration; exceeding it is a hard error. The default
    /// of 60 puts the smallest trial step near 8.7e-19 with `theta = 0.5`,
    /// far below double-precision relevance, so hitting the cap means the
    /// search cannot terminate.
    pub max_backtracks: u32,
    /// Stopping threshold on the residual `||x - y(x)||`.
    pub eps: f64,
    /// Iteration cap; hitting it is a reported outcome, not an error.
    pub max_iter: u64,
}

impl Default for ArmijoParams {
    fn default() -> Self {
        ArmijoParams {
            beta: 0.5,
            theta: 0.5,
            max_backtracks: 60,
            eps: 0.01,
            max_iter: 100_000,
        }
    }
}

impl ArmijoParams {
    pub fn validate(&self) -> Result<()> {
        if !in_open_unit(self.beta) {
            return Err(Error::InvalidArgument(format!(
                "beta must lie in (0,1), got {}",
                self.beta
            )));
        }
        if !in_open_unit(self.theta) {
            return Err(Error::InvalidArgument(format!(
                "theta must lie in (0,1), got {}",
                self.theta
            )));
        }
        if self.max_backtracks == 0 {
            return Err(Error::InvalidArgument(
                "max_backtracks must be at least 1".into(),
            ));
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

/// Parameters of the divergent-series solver.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergentSeriesParams {
    /// Stopping threshold on the residual `||x - y(x)||`.
    pub eps: f64,
    /// Iteration cap; hitting it is a reported outcome, not an error.
    pub max_iter: u64,
}

impl Default for DivergentSeriesParams {
    fn default() -> Self {
        DivergentSeriesParams {
            eps: 0.01,
            max_iter: 100_000,
        }
    }
}

impl DivergentSeriesParams {
    pub fn validate(&self) -> Result<()> {
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

/// Runs Armijo backtracking from `x0`: per iteration, find the smallest
/// `m >= 0` with `f(x + theta^m d) <= f(x) - beta * theta^m ||d||^2` and step
/// with `lambda = theta^m`. Every trial evaluation counts toward `kf`, so
/// `kf = 1 + sum_k (m_k + 1)`.
pub fn armijo_solve<F: GoalFunction + ?Sized>(
    objective: &F,
    map: &DirectionMap<'_>,
    params: &ArmijoParams,
    x0: &Vector,
) -> Result<SolverRun> {
    params.validate()?;
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
    let mut x = x0.clone();
    let mut f_x = objective.value(&x)?;
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

        let mut step = 1.0_f64;
        let mut backtracks: u32 = 0;
        let mut rejected_trial = None;
        let (z, f_trial) = loop {
            let z = axpy(step, &d, &x)?;
            let f_trial = objective.value(&z)?;
            if f_trial <= f_x - params.beta * step * d_norm_sq {
                break (z, f_trial);
            }
            if backtracks == params.max_backtracks {
                return Err(Error::LineSearchFailure {
                    iteration: trace.len() as u64,
                    max_backtracks: params.max_backtracks,
                });
            }
            backtracks += 1;
            rejected_trial = Some(f_trial);
            step *= params.theta;
        };

        trace.push(IterationRecord {
            lambda: step,
            majorant_index: 0,
            residual,
            direction_norm_sq: d_norm_sq,
            f_current: f_x,
            f_trial,
            rejected_trial,
            accepted: true,
            backtracks: backtracks as u64,
            f_next: f_trial,
            f_best: f_trial,
        });
        x = z;
        f_x = f_trial;
    };

    Ok(SolverRun {
        params: RunParams::Armijo(params.clone()),
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

/// Runs the divergent-series projected gradient rule
/// `x_{k+1} = project(x_k - grad f(x_k) / (k+1))` from `x0`. The rule itself
/// needs only gradients; the goal function is still evaluated once per
/// iteration so the `kf` column stays comparable with the other solvers.
pub fn divergent_series_solve(
    objective: &CountingObjective<'_>,
    region: &FeasibleRegion,
    params: &DivergentSeriesParams,
    x0: &Vector,
) -> Result<SolverRun> {
    params.validate()?;
    if x0.len() != region.dim() {
        return Err(Error::DimensionMismatch {
            expected: region.dim(),
            got: x0.len(),
        });
    }
    let violation = region.violation(x0)?;
    if violation > FEASIBILITY_TOL {
        return Err(Error::InfeasiblePoint { violation });
    }

    let started = Instant::now();
    let kf_start = objective.evaluations();
    let mut x = x0.clone();
    let mut f_x = objective.value(&x)?;
    let mut trace: Vec<IterationRecord> = Vec::new();

    let (termination, final_residual) = loop {
        let g = objective.gradient(&x)?;
        // Natural residual with unit scaling, shared with the other solvers.
        let y = region.project(&axpy(-1.0, &g, &x)?)?;
        let d = y.sub(&x)?;
        let d_norm_sq = d.dot(&d)?;
        let residual = d_norm_sq.sqrt();
        if residual == 0.0 {
            break (Termination::ExactFixedPoint, residual);
        }
        if residual <= params.eps {
            break (Termination::ResidualReached, residual);
        }
        let k = trace.len() as u64;
        if k >= params.max_iter {
            break (Termination::MaxIter, residual);
        }

        let lambda = 1.0 / (k as f64 + 1.0);
        let next = region.project(&axpy(-lambda, &g, &x)?)?;
        let f_current = f_x;
        f_x = objective.value(&next)?;
        x = next;

        trace.push(IterationRecord {
            lambda,
            majorant_index: 0,
            residual,
            direction_norm_sq: d_norm_sq,
            f_current,
            f_trial: f_x,
            rejected_trial: None,
            accepted: true,
            backtracks: 0,
            f_next: f_x,
            f_best: f_x,
        });
    };

    Ok(SolverRun {
        params: RunParams::DivergentSeries(params.clone()),
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
