//! Bézier curves on manifolds through the De Casteljau algorithm, with
//! straight lines replaced by shortest geodesics.

use crate::error::{ManifoldError, Result};
use crate::manifold::{shortest_geodesic_mut, Manifold};

/// Control points `x_0, …, x_n` of a degree-`n` Bézier curve.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierSpec<P> {
    control_points: Vec<P>,
}

impl<P: Clone> BezierSpec<P> {
    /// Needs at least two control points.
    pub fn new(control_points: Vec<P>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(ManifoldError::InvalidArgument(format!(
                "a Bézier curve needs at least 2 control points, got {}",
                control_points.len()
            )));
        }
        Ok(Self { control_points })
    }

    /// Like [`BezierSpec::new`], also requiring every control point to be
    /// valid on `manifold`.
    pub fn on<M>(manifold: &M, control_points: Vec<P>, tol: f64) -> Result<Self>
    where
        M: Manifold<Point = P> + ?Sized,
    {
        for (i, p) in control_points.iter().enumerate() {
            manifold
                .check_point(p, tol)
                .map_err(|e| ManifoldError::Validation(format!("control point {i}: {e}")))?;
        }
        Self::new(control_points)
    }

    pub fn control_points(&self) -> &[P] {
        &self.control_points
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }
}

/// Evaluates the curve at `t ∈ [0, 1]`:
/// `b_n(t) = γ(t; b_{n-1}(t; x_0..x_{n-1}), b_{n-1}(t; x_1..x_n))`.
///
/// Each De Casteljau level contracts a scratch copy of the control points
/// in place.
pub fn bezier_eval<M: Manifold + ?Sized>(
    manifold: &M,
    spec: &BezierSpec<M::Point>,
    t: f64,
) -> Result<M::Point> {
    if !(0.0..=1.0).contains(&t) {
        return Err(ManifoldError::InvalidArgument(format!(
            "curve parameter {t} is outside [0, 1]"
        )));
    }
    let mut level = spec.control_points.clone();
    let mut next = manifold.allocate();
    let mut tangent = manifold.allocate();
    for len in (1..level.len()).rev() {
        for i in 0..len {
            shortest_geodesic_mut(
                manifold,
                &mut next,
                &mut tangent,
                &level[i],
                &level[i + 1],
                t,
            )?;
            std::mem::swap(&mut level[i], &mut next);
        }
    }
    level.truncate(1);
    Ok(level.pop().expect("at least two control points"))
}
