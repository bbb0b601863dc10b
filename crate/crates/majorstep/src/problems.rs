//! Objective/operator interfaces with evaluation counting, plus the bundled
//! synthetic test problems.
//!
//! The solvers report `kf`, the total number of goal-function evaluations, so
//! every value computation is funneled through one counted choke point: either
//! a [`CountingObjective`] wrapper (smooth problems) or the gap function's own
//! counter (variational inequalities). Gradient and operator evaluations are
//! never counted.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, FeasibleRegion, Vector};

/// A continuously differentiable objective on some feasible set.
pub trait SmoothObjective {
    fn dim(&self) -> usize;
    fn value(&self, x: &Vector) -> Result<f64>;
    fn gradient(&self, x: &Vector) -> Result<Vector>;
}

/// A single-valued operator defining a variational inequality on a convex set.
pub trait ViOperator {
    fn dim(&self) -> usize;
    fn eval(&self, x: &Vector) -> Result<Vector>;

    /// Analytic Jacobian, when available; used only for diagnostics and tests.
    fn jacobian(&self, x: &Vector) -> Result<Option<DenseMatrix>> {
        let _ = x;
        Ok(None)
    }

    /// Declared strong-monotonicity lower bound `tau` with
    /// `<G(x)-G(y), x-y> >= tau * ||x-y||^2`.
    fn strong_monotonicity(&self) -> f64;
}

/// The counted value interface the solvers consume: a goal function together
/// with the number of times it has been evaluated.
pub trait GoalFunction {
    fn value(&self, x: &Vector) -> Result<f64>;
    fn evaluations(&self) -> u64;
}

/// Wraps a [`SmoothObjective`] and counts value evaluations.
///
/// The counter is plain per-run state: create one wrapper per solver run and
/// read the count back from the finished run.
pub struct CountingObjective<'a> {
    inner: &'a dyn SmoothObjective,
    evals: Cell<u64>,
}

impl<'a> CountingObjective<'a> {
    pub fn new(inner: &'a dyn SmoothObjective) -> Self {
        CountingObjective {
            inner,
            evals: Cell::new(0),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Gradient pass-through; not counted.
    pub fn gradient(&self, x: &Vector) -> Result<Vector> {
        self.inner.gradient(x)
    }
}

impl GoalFunction for CountingObjective<'_> {
    fn value(&self, x: &Vector) -> Result<f64> {
        self.evals.set(self.evals.get() + 1);
        self.inner.value(x)
    }

    fn evaluations(&self) -> u64 {
        self.evals.get()
    }
}

/// Feasible-set flavor of [`build_quadratic`]; also fixes the start point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticRegionKind {
    /// Nonnegative orthant, start `x0[j] = n/2 + sin(j)` (1-based j).
    Orthant,
    /// Box `[-5, 5]^n`, start `x0 = (-5, ..., -5)`.
    Box,
}

/// Least-squares test problem `f(x) = 0.5 ||P x - q||^2` with
/// `p_ij = sin(i) cos(j) + 2 [i = j]` (1-based indices, radians) and
/// `q_i = sum_j p_ij`, so the all-ones vector is an unconstrained minimizer
/// with `f = 0`.
#[derive(Clone, Debug)]
pub struct QuadraticTestProblem {
    m: usize,
    n: usize,
    p: DenseMatrix,
    q: Vector,
    region: FeasibleRegion,
    x0: Vector,
}

/// Builds the quadratic test problem for the given shape and feasible set.
pub fn build_quadratic(
    m: usize,
    n: usize,
    kind: QuadraticRegionKind,
) -> Result<QuadraticTestProblem> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "quadratic problem needs positive dimensions, got {m}x{n}"
        )));
    }
    let p = DenseMatrix::from_fn(m, n, |i0, j0| {
        let (i, j) = ((i0 + 1) as f64, (j0 + 1) as f64);
        i.sin() * j.cos() + if i0 == j0 { 2.0 } else { 0.0 }
    });
    let q = Vector::from_fn(m, |i| (0..n).map(|j| p.get(i, j)).sum());
    let (region, x0) = match kind {
        QuadraticRegionKind::Orthant => (
            FeasibleRegion::nonnegative_orthant(n),
            Vector::from_fn(n, |j0| n as f64 / 2.0 + ((j0 + 1) as f64).sin()),
        ),
        QuadraticRegionKind::Box => (
            FeasibleRegion::uniform_box(n, -5.0, 5.0)?,
            Vector::filled(n, -5.0),
        ),
    };
    Ok(QuadraticTestProblem {
        m,
        n,
        p,
        q,
        region,
        x0,
    })
}

impl QuadraticTestProblem {
    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.p
    }

    pub fn rhs(&self) -> &Vector {
        &self.q
    }

    pub fn region(&self) -> &FeasibleRegion {
        &self.region
    }

    pub fn start(&self) -> &Vector {
        &self.x0
    }

    fn residual_vec(&self, x: &Vector) -> Result<Vector> {
        self.p.matvec(x)?.sub(&self.q)
    }
}

impl SmoothObjective for QuadraticTestProblem {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        let r = self.residual_vec(x)?;
        Ok(0.5 * r.dot(&r)?)
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        self.p.tr_matvec(&self.residual_vec(x)?)
    }
}

/// Strongly monotone variational-inequality test problem on the box `[1,6]^n`.
///
/// The operator is `G(x) = A x + b + mu * C(x)` with `A = A' + A''`, where
/// `A'` is symmetric with a diagonal-dominance margin of exactly 2, `A''` is
/// skew-symmetric, `b_i = -10 sum_j a_ij`, `mu = 10`, and
/// `C_i(x) = atan(x_i - 2)`. The margin plus the monotone `atan` term make
/// `G` strongly monotone with constant 2.
#[derive(Clone, Debug)]
pub struct ViTestProblem {
    n: usize,
    a: DenseMatrix,
    a_sym: DenseMatrix,
    a_skew: DenseMatrix,
    b: Vector,
    mu: f64,
    tau: f64,
    region: FeasibleRegion,
    x0: Vector,
}

/// Builds the variational-inequality test problem of dimension `n`.
pub fn build_vi(n: usize) -> Result<ViTestProblem> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "vi problem needs a positive dimension".into(),
        ));
    }
    let mut a_sym = DenseMatrix::from_fn(n, n, |i0, j0| {
        let (i, j) = ((i0 + 1) as f64, (j0 + 1) as f64);
        if i0 < j0 {
            i.sin() * j.cos() / (i + j)
        } else if i0 > j0 {
            j.sin() * i.cos() / (i + j)
        } else {
            0.0
        }
    });
    for i in 0..n {
        let off: f64 = (0..n)
            .filter(|&s| s != i)
            .map(|s| a_sym.get(i, s).abs())
            .sum();
        a_sym.set(i, i, off + 2.0);
    }
    let a_skew = DenseMatrix::from_fn(n, n, |i0, j0| {
        let (i, j) = ((i0 + 1) as f64, (j0 + 1) as f64);
        if i0 < j0 {
            (i * j).sin() * (1.0 + i / j).ln()
        } else if i0 > j0 {
            -(i * j).sin() * (1.0 + j / i).ln()
        } else {
            0.0
        }
    });
    let a = DenseMatrix::from_fn(n, n, |i, j| a_sym.get(i, j) + a_skew.get(i, j));
    let b = Vector::from_fn(n, |i| -10.0 * (0..n).map(|j| a.get(i, j)).sum::<f64>());
    Ok(ViTestProblem {
        n,
        a,
        a_sym,
        a_skew,
        b,
        mu: 10.0,
        tau: 2.0,
        region: FeasibleRegion::uniform_box(n, 1.0, 6.0)?,
        x0: Vector::filled(n, 6.0),
    })
}

impl ViTestProblem {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn symmetric_part(&self) -> &DenseMatrix {
        &self.a_sym
    }

    pub fn skew_part(&self) -> &DenseMatrix {
        &self.a_skew
    }

    pub fn offset(&self) -> &Vector {
        &self.b
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn region(&self) -> &FeasibleRegion {
        &self.region
    }

    pub fn start(&self) -> &Vector {
        &self.x0
    }
}

impl ViOperator for ViTestProblem {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Vector) -> Result<Vector> {
        let ax = self.a.matvec(x)?;
        Ok(Vector::from_fn(self.n, |i| {
            ax[i] + self.b[i] + self.mu * (x[i] - 2.0).atan()
        }))
    }

    fn jacobian(&self, x: &Vector) -> Result<Option<DenseMatrix>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let jac = DenseMatrix::from_fn(self.n, self.n, |i, j| {
            let diag = if i == j {
                let t = x[i] - 2.0;
                self.mu / (1.0 + t * t)
            } else {
                0.0
            };
            self.a.get(i, j) + diag
        });
        Ok(Some(jac))
    }

    fn strong_monotonicity(&self) -> f64 {
        self.tau
    }
}
