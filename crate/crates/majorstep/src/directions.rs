//! Direction-finding maps `x -> y(x)` and the gap function for variational
//! inequalities.
//!
//! Both instantiations share the same shape: take a step of size `1/alpha`
//! along the negative gradient (or operator value) and project back onto the
//! feasible set. A point is stationary exactly when `y(x) = x`, which makes
//! `||x - y(x)||` the natural stopping residual.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::numerics::{axpy, FeasibleRegion, Vector, FEASIBILITY_TOL};
use crate::problems::{GoalFunction, SmoothObjective, ViOperator};

/// What the map steps along before projecting.
pub enum DirectionSource<'a> {
    /// `y(x) = project(x - grad f(x) / alpha)`.
    GradientProjection {
        objective: &'a dyn SmoothObjective,
        region: &'a FeasibleRegion,
    },
    /// `y(x) = project(x - G(x) / alpha)`, the natural map of a variational
    /// inequality.
    ViNaturalMap {
        operator: &'a dyn ViOperator,
        region: &'a FeasibleRegion,
    },
}

struct PointCache {
    x: Vector,
    field: Vector,
    point: Vector,
}

/// The mapping `x -> y(x)` used by all solvers for directions and residuals.
///
/// The most recent `(x, field, y)` triple is cached so that a gap-function
/// evaluation and the subsequent direction query at the same iterate share a
/// single operator call and projection.
pub struct DirectionMap<'a> {
    alpha: f64,
    source: DirectionSource<'a>,
    cache: RefCell<Option<PointCache>>,
}

impl<'a> DirectionMap<'a> {
    pub fn gradient_projection(
        objective: &'a dyn SmoothObjective,
        region: &'a FeasibleRegion,
        alpha: f64,
    ) -> Result<Self> {
        if objective.dim() != region.dim() {
            return Err(Error::DimensionMismatch {
                expected: region.dim(),
                got: objective.dim(),
            });
        }
        Self::with_source(DirectionSource::GradientProjection { objective, region }, alpha)
    }

    pub fn vi_natural(
        operator: &'a dyn ViOperator,
        region: &'a FeasibleRegion,
        alpha: f64,
    ) -> Result<Self> {
        if operator.dim() != region.dim() {
            return Err(Error::DimensionMismatch {
                expected: region.dim(),
                got: operator.dim(),
            });
        }
        Self::with_source(DirectionSource::ViNaturalMap { operator, region }, alpha)
    }

    fn with_source(source: DirectionSource<'a>, alpha: f64) -> Result<Self> {
        if alpha <= 0.0 || alpha.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(DirectionMap {
            alpha,
            source,
            cache: RefCell::new(None),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn region(&self) -> &FeasibleRegion {
        match &self.source {
            DirectionSource::GradientProjection { region, .. }
            | DirectionSource::ViNaturalMap { region, .. } => region,
        }
    }

    pub fn dim(&self) -> usize {
        self.region().dim()
    }

    pub fn source(&self) -> &DirectionSource<'a> {
        &self.source
    }

    /// Descent modulus `tau` of the map: step acceptance in the solvers
    /// requires `beta < tau`. Equals `alpha` for the gradient projection and
    /// the operator's strong-monotonicity constant for the natural map.
    pub fn tau(&self) -> f64 {
        match &self.source {
            DirectionSource::GradientProjection { .. } => self.alpha,
            DirectionSource::ViNaturalMap { operator, .. } => operator.strong_monotonicity(),
        }
    }

    fn field(&self, x: &Vector) -> Result<Vector> {
        match &self.source {
            DirectionSource::GradientProjection { objective, .. } => objective.gradient(x),
            DirectionSource::ViNaturalMap { operator, .. } => operator.eval(x),
        }
    }

    /// Returns `(y(x), field(x))`, reusing the cached pair when `x` is the
    /// point evaluated last.
    pub fn point_and_field(&self, x: &Vector) -> Result<(Vector, Vector)> {
        if let Some(cache) = self.cache.borrow().as_ref() {
            if cache.x == *x {
                return Ok((cache.point.clone(), cache.field.clone()));
            }
        }
        let field = self.field(x)?;
        let stepped = axpy(-1.0 / self.alpha, &field, x)?;
        let point = self.region().project(&stepped)?;
        *self.cache.borrow_mut() = Some(PointCache {
            x: x.clone(),
            field: field.clone(),
            point: point.clone(),
        });
        Ok((point, field))
    }

    /// The direction point `y(x)`; feasible for every feasible `x`.
    pub fn point(&self, x: &Vector) -> Result<Vector> {
        Ok(self.point_and_field(x)?.0)
    }

    /// Stopping residual `||x - y(x)||`; zero exactly at stationary points.
    /// Never counted as a goal-function evaluation.
    pub fn residual(&self, x: &Vector) -> Result<f64> {
        let y = self.point(x)?;
        Ok(x.sub(&y)?.norm())
    }
}

/// The gap function of a variational inequality,
/// `phi(x) = max_y { <G(x), x - y> - alpha/2 ||x - y||^2 }` over the feasible
/// set. It is nonnegative on the set and vanishes exactly at solutions, which
/// turns the variational inequality into the minimization of `phi`.
///
/// The maximizer is `y(x)` from the natural map, so each evaluation computes
/// one operator value and one projection, shared with the direction map it
/// wraps. Evaluations are counted; direction/residual queries are not.
pub struct GapFunction<'m, 'a> {
    map: &'m DirectionMap<'a>,
    evals: std::cell::Cell<u64>,
}

impl<'m, 'a> GapFunction<'m, 'a> {
    /// Wraps a natural-map direction source. Gradient-projection maps are
    /// rejected: the gap function is defined by an operator, not a gradient.
    pub fn new(map: &'m DirectionMap<'a>) -> Result<Self> {
        match map.source() {
            DirectionSource::ViNaturalMap { .. } => Ok(GapFunction {
                map,
                evals: std::cell::Cell::new(0),
            }),
            DirectionSource::GradientProjection { .. } => Err(Error::InvalidArgument(
                "gap function requires a vi natural map".into(),
            )),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.map.alpha()
    }

    pub fn region(&self) -> &FeasibleRegion {
        self.map.region()
    }

    /// Gap value at a feasible `x` (membership checked to `1e-12`).
    pub fn value(&self, x: &Vector) -> Result<f64> {
        let violation = self.region().violation(x)?;
        if violation > FEASIBILITY_TOL {
            return Err(Error::InfeasiblePoint { violation });
        }
        let (y, g) = self.map.point_and_field(x)?;
        let d = x.sub(&y)?;
        let value = g.dot(&d)? - 0.5 * self.alpha() * d.dot(&d)?;
        self.evals.set(self.evals.get() + 1);
        Ok(value)
    }
}

impl GoalFunction for GapFunction<'_, '_> {
    fn value(&self, x: &Vector) -> Result<f64> {
        GapFunction::value(self, x)
    }

    fn evaluations(&self) -> u64 {
        self.evals.get()
    }
}
