//! A decorator that checks every input and output of the wrapped manifold.

use nalgebra::DVector;
use rand::RngCore;

use crate::basis::Basis;
use crate::descriptor::ManifoldDescriptor;
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::manifold::{
    InverseRetractionMethod, Manifold, RetractionMethod, VectorTransportMethod, DEFAULT_TOLERANCE,
};

/// Wraps a manifold and validates points and tangent vectors on the way in
/// and out of every operation.
///
/// Fallible operations report violations as [`ManifoldError::Validation`].
/// Operations whose signature cannot fail (`distance`, `inner`, `norm`,
/// `project_tangent`, `rand_point`, `rand_tangent`) panic on a violation;
/// the `try_*` methods return the error instead.
#[derive(Debug, Clone)]
pub struct ValidationManifold<M> {
    inner: M,
    tol: f64,
}

impl<M: Manifold> ValidationManifold<M> {
    pub fn new(inner: M) -> Self {
        Self::with_tolerance(inner, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(inner: M, tol: f64) -> Self {
        assert!(tol >= 0.0, "tolerance must be nonnegative");
        Self { inner, tol }
    }

    pub fn inner_manifold(&self) -> &M {
        &self.inner
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    fn point(&self, what: &str, p: &M::Point) -> Result<()> {
        self.inner
            .check_point(p, self.tol)
            .map_err(|e| ManifoldError::Validation(format!("{what} is not a point: {e}")))
    }

    fn tangent(&self, what: &str, p: &M::Point, x: &M::Point) -> Result<()> {
        self.inner
            .check_tangent(p, x, self.tol)
            .map_err(|e| ManifoldError::Validation(format!("{what} is not a tangent vector: {e}")))
    }

    pub fn try_distance(&self, p: &M::Point, q: &M::Point) -> Result<f64> {
        self.point("p", p)?;
        self.point("q", q)?;
        Ok(self.inner.distance(p, q))
    }

    pub fn try_inner(&self, p: &M::Point, x: &M::Point, y: &M::Point) -> Result<f64> {
        self.point("p", p)?;
        self.tangent("X", p, x)?;
        self.tangent("Y", p, y)?;
        Ok(self.inner.inner(p, x, y))
    }

    pub fn try_project_tangent(&self, p: &M::Point, a: &M::Point) -> Result<M::Point> {
        self.point("p", p)?;
        let out = self.inner.project_tangent(p, a);
        self.tangent("projected vector", p, &out)?;
        Ok(out)
    }

    pub fn try_rand_point(&self, rng: &mut dyn RngCore) -> Result<M::Point> {
        let p = self.inner.rand_point(rng);
        self.point("random point", &p)?;
        Ok(p)
    }

    pub fn try_rand_tangent(&self, p: &M::Point, rng: &mut dyn RngCore) -> Result<M::Point> {
        self.point("p", p)?;
        let x = self.inner.rand_tangent(p, rng);
        self.tangent("random tangent", p, &x)?;
        Ok(x)
    }
}

fn expect<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

impl<M: Manifold> Manifold for ValidationManifold<M> {
    type Point = M::Point;

    fn descriptor(&self) -> ManifoldDescriptor {
        self.inner.descriptor()
    }

    fn manifold_dimension(&self) -> usize {
        self.inner.manifold_dimension()
    }

    fn injectivity_radius(&self) -> f64 {
        self.inner.injectivity_radius()
    }

    fn allocate(&self) -> M::Point {
        self.inner.allocate()
    }

    fn check_point(&self, p: &M::Point, tol: f64) -> Result<()> {
        self.inner.check_point(p, tol)
    }

    fn check_tangent(&self, p: &M::Point, x: &M::Point, tol: f64) -> Result<()> {
        self.inner.check_tangent(p, x, tol)
    }

    fn zero_vector(&self, p: &M::Point) -> M::Point {
        self.inner.zero_vector(p)
    }

    fn exp_mut(&self, q: &mut M::Point, p: &M::Point, x: &M::Point) -> Result<()> {
        self.point("p", p)?;
        self.tangent("X", p, x)?;
        self.inner.exp_mut(q, p, x)?;
        self.point("exp result", q)
    }

    fn log_mut(&self, x: &mut M::Point, p: &M::Point, q: &M::Point) -> Result<()> {
        self.point("p", p)?;
        self.point("q", q)?;
        self.inner.log_mut(x, p, q)?;
        self.tangent("log result", p, x)
    }

    fn retract_mut(
        &self,
        q: &mut M::Point,
        p: &M::Point,
        x: &M::Point,
        method: RetractionMethod,
    ) -> Result<()> {
        self.point("p", p)?;
        self.tangent("X", p, x)?;
        self.inner.retract_mut(q, p, x, method)?;
        self.point("retraction result", q)
    }

    fn inverse_retract_mut(
        &self,
        x: &mut M::Point,
        p: &M::Point,
        q: &M::Point,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        self.point("p", p)?;
        self.point("q", q)?;
        self.inner.inverse_retract_mut(x, p, q, method)?;
        self.tangent("inverse retraction result", p, x)
    }

    fn distance(&self, p: &M::Point, q: &M::Point) -> f64 {
        expect(self.try_distance(p, q))
    }

    fn inner(&self, p: &M::Point, x: &M::Point, y: &M::Point) -> f64 {
        expect(self.try_inner(p, x, y))
    }

    fn parallel_transport_mut(
        &self,
        out: &mut M::Point,
        p: &M::Point,
        q: &M::Point,
        x: &M::Point,
    ) -> Result<()> {
        self.point("p", p)?;
        self.point("q", q)?;
        self.tangent("X", p, x)?;
        self.inner.parallel_transport_mut(out, p, q, x)?;
        self.tangent("transported vector", q, out)
    }

    fn vector_transport_mut(
        &self,
        out: &mut M::Point,
        p: &M::Point,
        q: &M::Point,
        x: &M::Point,
        method: VectorTransportMethod,
    ) -> Result<()> {
        self.point("p", p)?;
        self.point("q", q)?;
        self.tangent("X", p, x)?;
        self.inner.vector_transport_mut(out, p, q, x, method)?;
        self.tangent("transported vector", q, out)
    }

    fn project_point_mut(&self, out: &mut M::Point, a: &M::Point) -> Result<()> {
        self.inner.project_point_mut(out, a)?;
        self.point("projected point", out)
    }

    fn project_tangent_mut(&self, out: &mut M::Point, p: &M::Point, a: &M::Point) {
        expect(self.point("p", p));
        self.inner.project_tangent_mut(out, p, a);
        expect(self.tangent("projected vector", p, out));
    }

    fn orthonormal_basis(&self, p: &M::Point) -> Result<Basis<M::Point>> {
        self.point("p", p)?;
        let basis = self.inner.orthonormal_basis(p)?;
        for (i, v) in basis.vectors.iter().enumerate() {
            self.tangent(&format!("basis vector {i}"), p, v)?;
        }
        Ok(basis)
    }

    fn get_coordinates(
        &self,
        p: &M::Point,
        x: &M::Point,
        basis: &Basis<M::Point>,
    ) -> Result<DVector<f64>> {
        self.point("p", p)?;
        self.tangent("X", p, x)?;
        self.inner.get_coordinates(p, x, basis)
    }

    fn get_vector_mut(
        &self,
        out: &mut M::Point,
        p: &M::Point,
        coordinates: &DVector<f64>,
        basis: &Basis<M::Point>,
    ) -> Result<()> {
        self.point("p", p)?;
        self.inner.get_vector_mut(out, p, coordinates, basis)?;
        self.tangent("reconstructed vector", p, out)
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> M::Point {
        expect(self.try_rand_point(rng))
    }

    fn rand_tangent(&self, p: &M::Point, rng: &mut dyn RngCore) -> M::Point {
        expect(self.try_rand_tangent(p, rng))
    }
}

impl<M: Embedded> Embedded for ValidationManifold<M> {
    fn embedding_info(&self) -> EmbeddingInfo {
        self.inner.embedding_info()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::Sphere;
    use nalgebra::dmatrix;

    #[test]
    fn rejects_off_sphere_point() {
        let raw = Sphere::new(2);
        let m = ValidationManifold::new(raw);
        let p = dmatrix![2.0; 0.0; 0.0];
        let x = dmatrix![0.0; 1.0; 0.0];
        assert!(m.exp(&p, &x).unwrap_err().is_validation());
        assert!(raw.exp(&p, &x).is_ok());
        assert!(m.try_distance(&p, &p).unwrap_err().is_validation());
    }

    #[test]
    #[should_panic(expected = "not a point")]
    fn infallible_operations_panic() {
        let m = ValidationManifold::new(Sphere::new(2));
        let p = dmatrix![2.0; 0.0; 0.0];
        m.distance(&p, &p);
    }

    #[test]
    fn tolerance_is_configurable() {
        let p = dmatrix![1.0 + 1e-6; 0.0; 0.0];
        let x = dmatrix![0.0; 0.1; 0.0];
        assert!(ValidationManifold::new(Sphere::new(2)).exp(&p, &x).is_err());
        let loose = ValidationManifold::with_tolerance(Sphere::new(2), 1e-4);
        assert!(loose.exp(&p, &x).is_ok());
    }
}
