//! Dense vectors, row-major matrices, and Euclidean projections onto the
//! feasible sets used by the solvers.
//!
//! Everything is double precision and immutable after construction, so values
//! can be shared freely across concurrent solver runs.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Membership tolerance used by feasibility checks throughout the crate.
/// Projections themselves are exact (componentwise clamps); the tolerance
/// only absorbs roundoff from convex combinations of feasible points.
pub const FEASIBILITY_TOL: f64 = 1e-12;

/// A fixed-length vector of `f64` entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn from_vec(entries: Vec<f64>) -> Self {
        Vector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    pub fn filled(n: usize, value: f64) -> Self {
        Vector(vec![value; n])
    }

    /// Builds a vector from a function of the 0-based index.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Self {
        Vector((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    fn check_len(&self, other: &Vector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    /// Euclidean inner product.
    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_len(other)?;
        Ok(Vector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Scalar multiple `a * self`.
    pub fn scale(&self, a: f64) -> Vector {
        Vector(self.0.iter().map(|v| a * v).collect())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

/// Scaled add: returns `a * x + y`.
pub fn axpy(a: f64, x: &Vector, y: &Vector) -> Result<Vector> {
    x.check_len(y)?;
    Ok(Vector(
        x.0.iter()
            .zip(y.0.iter())
            .map(|(xi, yi)| a * xi + yi)
            .collect(),
    ))
}

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries; `rows * cols` must equal the
    /// number of entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::InvalidArgument(format!(
                "matrix shape {rows}x{cols} does not match {} entries",
                entries.len()
            )));
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds a matrix from a function of the 0-based `(row, col)` index.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.cols + j] = value;
    }

    /// Matrix-vector product `M x`.
    pub fn matvec(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let xs = x.as_slice();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            out.push(row.iter().zip(xs).map(|(a, b)| a * b).sum());
        }
        Ok(Vector(out))
    }

    /// Transposed product `M^T x`.
    pub fn tr_matvec(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        Ok(Vector(out))
    }
}

/// Projection routine for user-supplied convex sets.
pub type Projector = Arc<dyn Fn(&Vector) -> Vector + Send + Sync>;

/// A convex set with a cheap Euclidean projection.
///
/// The built-in kinds cover the feasible sets of the bundled test problems;
/// `Custom` is the extension point for any other convex set, supplied as a
/// projection routine.
#[derive(Clone)]
pub enum FeasibleRegion {
    /// Axis-aligned box `lo <= x <= hi`.
    Box { lo: Vector, hi: Vector },
    /// Nonnegative orthant of the given dimension.
    NonnegativeOrthant { dim: usize },
    /// The whole space (projection is the identity).
    WholeSpace { dim: usize },
    /// User-supplied projection onto some convex set.
    Custom { dim: usize, projector: Projector },
}

impl fmt::Debug for FeasibleRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeasibleRegion::Box { lo, hi } => {
                f.debug_struct("Box").field("lo", lo).field("hi", hi).finish()
            }
            FeasibleRegion::NonnegativeOrthant { dim } => {
                f.debug_struct("NonnegativeOrthant").field("dim", dim).finish()
            }
            FeasibleRegion::WholeSpace { dim } => {
                f.debug_struct("WholeSpace").field("dim", dim).finish()
            }
            FeasibleRegion::Custom { dim, .. } => {
                f.debug_struct("Custom").field("dim", dim).finish()
            }
        }
    }
}

impl FeasibleRegion {
    /// Box with the given bounds; every `lo[j] <= hi[j]` is required.
    pub fn box_bounds(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        for j in 0..lo.len() {
            if lo[j] > hi[j] || lo[j].is_nan() || hi[j].is_nan() {
                return Err(Error::InvalidArgument(format!(
                    "box lower bound {} exceeds upper bound {} at index {j}",
                    lo[j], hi[j]
                )));
            }
        }
        Ok(FeasibleRegion::Box { lo, hi })
    }

    /// Uniform box `[lo, hi]^n`.
    pub fn uniform_box(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::box_bounds(Vector::filled(n, lo), Vector::filled(n, hi))
    }

    pub fn nonnegative_orthant(dim: usize) -> Self {
        FeasibleRegion::NonnegativeOrthant { dim }
    }

    pub fn whole_space(dim: usize) -> Self {
        FeasibleRegion::WholeSpace { dim }
    }

    pub fn custom(dim: usize, projector: Projector) -> Self {
        FeasibleRegion::Custom { dim, projector }
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleRegion::Box { lo, .. } => lo.len(),
            FeasibleRegion::NonnegativeOrthant { dim }
            | FeasibleRegion::WholeSpace { dim }
            | FeasibleRegion::Custom { dim, .. } => *dim,
        }
    }

    /// Euclidean projection of `x` onto the region: componentwise clamp for
    /// boxes, positive part for the orthant, identity for the whole space.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match self {
            FeasibleRegion::Box { lo, hi } => Vector::from_fn(x.len(), |j| {
                // max-then-min also maps NaN coordinates to the box.
                x[j].max(lo[j]).min(hi[j])
            }),
            FeasibleRegion::NonnegativeOrthant { .. } => {
                Vector::from_fn(x.len(), |j| x[j].max(0.0))
            }
            FeasibleRegion::WholeSpace { .. } => x.clone(),
            FeasibleRegion::Custom { projector, dim } => {
                let y = projector(x);
                if y.len() != *dim {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        got: y.len(),
                    });
                }
                y
            }
        })
    }

    /// Worst constraint violation of `x`; zero for interior points.
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match self {
            FeasibleRegion::Box { lo, hi } => (0..x.len())
                .map(|j| (lo[j] - x[j]).max(x[j] - hi[j]).max(0.0))
                .fold(0.0, f64::max),
            FeasibleRegion::NonnegativeOrthant { .. } => {
                x.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max)
            }
            FeasibleRegion::WholeSpace { .. } => 0.0,
            FeasibleRegion::Custom { .. } => {
                let y = self.project(x)?;
                x.sub(&y)?.norm()
            }
        })
    }

    /// Membership test up to the given tolerance.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        matches!(self.violation(x), Ok(v) if v <= tol)
    }
}
