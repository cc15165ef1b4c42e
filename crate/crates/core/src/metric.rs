//! Manifolds with a constant rescaling of the base metric.

use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, MetricTag};
use crate::error::Result;
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod};

/// The base manifold with metric `c <·,·>` for a constant `c > 0`.
///
/// Geodesics, and therefore `exp`, `log` and parallel transport, are those
/// of the base manifold; lengths scale by `√c`.
#[derive(Debug, Clone)]
pub struct MetricManifold<M> {
    base: M,
    scale: f64,
}

impl<M: Manifold> MetricManifold<M> {
    pub fn scaled(base: M, scale: f64) -> Self {
        assert!(
            scale > 0.0 && scale.is_finite(),
            "metric scale must be positive"
        );
        Self { base, scale }
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl<M: Manifold> Manifold for MetricManifold<M> {
    type Point = M::Point;

    fn descriptor(&self) -> ManifoldDescriptor {
        let mut d = self.base.descriptor();
        d.metric = MetricTag::Scaled(self.scale);
        d
    }

    fn manifold_dimension(&self) -> usize {
        self.base.manifold_dimension()
    }

    fn injectivity_radius(&self) -> f64 {
        self.base.injectivity_radius() * self.scale.sqrt()
    }

    fn allocate(&self) -> M::Point {
        self.base.allocate()
    }

    fn check_point(&self, p: &M::Point, tol: f64) -> Result<()> {
        self.base.check_point(p, tol)
    }

    fn check_tangent(&self, p: &M::Point, x: &M::Point, tol: f64) -> Result<()> {
        self.base.check_tangent(p, x, tol)
    }

    fn exp_mut(&self, q: &mut M::Point, p: &M::Point, x: &M::Point) -> Result<()> {
        self.base.exp_mut(q, p, x)
    }

    fn log_mut(&self, x: &mut M::Point, p: &M::Point, q: &M::Point) -> Result<()> {
        self.base.log_mut(x, p, q)
    }

    fn retract_mut(
        &self,
        q: &mut M::Point,
        p: &M::Point,
        x: &M::Point,
        method: RetractionMethod,
    ) -> Result<()> {
        self.base.retract_mut(q, p, x, method)
    }

    fn inverse_retract_mut(
        &self,
        x: &mut M::Point,
        p: &M::Point,
        q: &M::Point,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        self.base.inverse_retract_mut(x, p, q, method)
    }

    fn distance(&self, p: &M::Point, q: &M::Point) -> f64 {
        self.scale.sqrt() * self.base.distance(p, q)
    }

    fn inner(&self, p: &M::Point, x: &M::Point, y: &M::Point) -> f64 {
        self.scale * self.base.inner(p, x, y)
    }

    fn parallel_transport_mut(
        &self,
        out: &mut M::Point,
        p: &M::Point,
        q: &M::Point,
        x: &M::Point,
    ) -> Result<()> {
        self.base.parallel_transport_mut(out, p, q, x)
    }

    fn project_point_mut(&self, out: &mut M::Point, a: &M::Point) -> Result<()> {
        self.base.project_point_mut(out, a)
    }

    fn project_tangent_mut(&self, out: &mut M::Point, p: &M::Point, a: &M::Point) {
        self.base.project_tangent_mut(out, p, a)
    }

    /// The base basis divided by `√c`.
    fn orthonormal_basis(&self, p: &M::Point) -> Result<Basis<M::Point>> {
        let mut basis = self.base.orthonormal_basis(p)?;
        let s = 1.0 / self.scale.sqrt();
        basis.vectors.iter_mut().for_each(|v| v.scale_mut(s));
        Ok(basis)
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> M::Point {
        self.base.rand_point(rng)
    }

    fn rand_tangent(&self, p: &M::Point, rng: &mut dyn RngCore) -> M::Point {
        self.base.rand_tangent(p, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::Sphere;
    use nalgebra::dmatrix;

    #[test]
    fn scaling_lengths() {
        let m = MetricManifold::scaled(Sphere::new(2), 4.0);
        let p = dmatrix![1.0; 0.0; 0.0];
        let q = dmatrix![0.0; 1.0; 0.0];
        assert!((m.distance(&p, &q) - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(m.norm(&p, &q), 2.0);
        assert_eq!(m.descriptor().to_string(), "Sphere(2) scaled by 4");
        let basis = m.orthonormal_basis(&p).unwrap();
        for v in &basis.vectors {
            assert!((m.norm(&p, v) - 1.0).abs() < 1e-15);
        }
    }
}
