//! The generic manifold interface.
//!
//! Every geometric operation comes in two forms: an in-place `*_mut` form that
//! writes into a caller-provided buffer and an allocating form that creates
//! the output with [`Manifold::allocate`] and delegates to the in-place form.
//! Implementors only need to provide the in-place forms.
//!
//! Rust's borrow rules rule out aliasing the output buffer with an input, so
//! callers that want to overwrite an input go through a clone or the
//! allocating form.

use nalgebra::DVector;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::ManifoldDescriptor;
use crate::error::{ManifoldError, Result};

/// Default absolute tolerance on constraint residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RetractionMethod {
    Exponential,
    /// Step in the ambient space, then project back onto the manifold.
    Projection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseRetractionMethod {
    Logarithmic,
    /// Inverse of [`RetractionMethod::Projection`].
    Projection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorTransportMethod {
    Parallel,
    /// Orthogonal projection of the vector onto the target tangent space.
    Projection,
}

pub trait Manifold: Send + Sync {
    /// Storage for points; tangent vectors share the same layout.
    type Point: ManifoldArray;

    fn descriptor(&self) -> ManifoldDescriptor;

    fn manifold_dimension(&self) -> usize {
        self.descriptor().manifold_dimension()
    }

    /// Global lower bound on the injectivity radius, in the manifold's
    /// length units. `f64::INFINITY` for Cartan–Hadamard manifolds.
    fn injectivity_radius(&self) -> f64;

    /// A zero-filled array in this manifold's point layout.
    fn allocate(&self) -> Self::Point;

    fn check_point(&self, p: &Self::Point, tol: f64) -> Result<()>;

    /// Checks that `x` is tangent at `p`. Does not re-check `p` itself.
    fn check_tangent(&self, p: &Self::Point, x: &Self::Point, tol: f64) -> Result<()>;

    fn is_point(&self, p: &Self::Point, tol: f64) -> bool {
        self.check_point(p, tol).is_ok()
    }

    fn is_tangent(&self, p: &Self::Point, x: &Self::Point, tol: f64) -> bool {
        self.check_tangent(p, x, tol).is_ok()
    }

    fn zero_vector(&self, p: &Self::Point) -> Self::Point {
        let mut x = p.clone();
        x.fill_zero();
        x
    }

    fn exp_mut(&self, q: &mut Self::Point, p: &Self::Point, x: &Self::Point) -> Result<()>;

    fn exp(&self, p: &Self::Point, x: &Self::Point) -> Result<Self::Point> {
        let mut q = self.allocate();
        self.exp_mut(&mut q, p, x)?;
        Ok(q)
    }

    fn log_mut(&self, x: &mut Self::Point, p: &Self::Point, q: &Self::Point) -> Result<()>;

    fn log(&self, p: &Self::Point, q: &Self::Point) -> Result<Self::Point> {
        let mut x = self.allocate();
        self.log_mut(&mut x, p, q)?;
        Ok(x)
    }

    fn retract_mut(
        &self,
        q: &mut Self::Point,
        p: &Self::Point,
        x: &Self::Point,
        method: RetractionMethod,
    ) -> Result<()> {
        match method {
            RetractionMethod::Exponential => self.exp_mut(q, p, x),
            other => Err(ManifoldError::unsupported(
                self.descriptor().to_string(),
                other,
            )),
        }
    }

    fn retract(
        &self,
        p: &Self::Point,
        x: &Self::Point,
        method: RetractionMethod,
    ) -> Result<Self::Point> {
        let mut q = self.allocate();
        self.retract_mut(&mut q, p, x, method)?;
        Ok(q)
    }

    fn inverse_retract_mut(
        &self,
        x: &mut Self::Point,
        p: &Self::Point,
        q: &Self::Point,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        match method {
            InverseRetractionMethod::Logarithmic => self.log_mut(x, p, q),
            other => Err(ManifoldError::unsupported(
                self.descriptor().to_string(),
                other,
            )),
        }
    }

    fn inverse_retract(
        &self,
        p: &Self::Point,
        q: &Self::Point,
        method: InverseRetractionMethod,
    ) -> Result<Self::Point> {
        let mut x = self.allocate();
        self.inverse_retract_mut(&mut x, p, q, method)?;
        Ok(x)
    }

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64;

    fn inner(&self, p: &Self::Point, x: &Self::Point, y: &Self::Point) -> f64;

    fn norm(&self, p: &Self::Point, x: &Self::Point) -> f64 {
        self.inner(p, x, x).max(0.0).sqrt()
    }

    fn parallel_transport_mut(
        &self,
        out: &mut Self::Point,
        p: &Self::Point,
        q: &Self::Point,
        x: &Self::Point,
    ) -> Result<()>;

    fn parallel_transport(
        &self,
        p: &Self::Point,
        q: &Self::Point,
        x: &Self::Point,
    ) -> Result<Self::Point> {
        let mut out = self.allocate();
        self.parallel_transport_mut(&mut out, p, q, x)?;
        Ok(out)
    }

    fn vector_transport_mut(
        &self,
        out: &mut Self::Point,
        p: &Self::Point,
        q: &Self::Point,
        x: &Self::Point,
        method: VectorTransportMethod,
    ) -> Result<()> {
        match method {
            VectorTransportMethod::Parallel => self.parallel_transport_mut(out, p, q, x),
            VectorTransportMethod::Projection => {
                self.project_tangent_mut(out, q, x);
                Ok(())
            }
        }
    }

    fn vector_transport(
        &self,
        p: &Self::Point,
        q: &Self::Point,
        x: &Self::Point,
        method: VectorTransportMethod,
    ) -> Result<Self::Point> {
        let mut out = self.allocate();
        self.vector_transport_mut(&mut out, p, q, x, method)?;
        Ok(out)
    }

    /// Maps an ambient array onto the manifold.
    fn project_point_mut(&self, out: &mut Self::Point, a: &Self::Point) -> Result<()>;

    fn project_point(&self, a: &Self::Point) -> Result<Self::Point> {
        let mut out = self.allocate();
        self.project_point_mut(&mut out, a)?;
        Ok(out)
    }

    /// Orthogonal projection of an ambient array onto the tangent space at `p`.
    fn project_tangent_mut(&self, out: &mut Self::Point, p: &Self::Point, a: &Self::Point);

    fn project_tangent(&self, p: &Self::Point, a: &Self::Point) -> Self::Point {
        let mut out = self.allocate();
        self.project_tangent_mut(&mut out, p, a);
        out
    }

    /// The deterministic orthonormal basis of `T_p M` used for coordinates.
    fn orthonormal_basis(&self, p: &Self::Point) -> Result<Basis<Self::Point>>;

    /// Coordinates of `x` in an orthonormal `basis` at `p`.
    fn get_coordinates(
        &self,
        p: &Self::Point,
        x: &Self::Point,
        basis: &Basis<Self::Point>,
    ) -> Result<DVector<f64>> {
        basis.check_base(p, self.manifold_dimension())?;
        Ok(DVector::from_iterator(
            basis.vectors.len(),
            basis.vectors.iter().map(|v| self.inner(p, x, v)),
        ))
    }

    fn get_vector_mut(
        &self,
        out: &mut Self::Point,
        p: &Self::Point,
        coordinates: &DVector<f64>,
        basis: &Basis<Self::Point>,
    ) -> Result<()> {
        basis.check_base(p, self.manifold_dimension())?;
        if coordinates.len() != basis.vectors.len() {
            return Err(ManifoldError::shape(
                format!("{} coordinates", basis.vectors.len()),
                format!("{} coordinates", coordinates.len()),
            ));
        }
        *out = self.zero_vector(p);
        for (c, v) in coordinates.iter().zip(basis.vectors.iter()) {
            out.add_scaled(*c, v);
        }
        Ok(())
    }

    fn get_vector(
        &self,
        p: &Self::Point,
        coordinates: &DVector<f64>,
        basis: &Basis<Self::Point>,
    ) -> Result<Self::Point> {
        let mut out = self.allocate();
        self.get_vector_mut(&mut out, p, coordinates, basis)?;
        Ok(out)
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> Self::Point;

    fn rand_tangent(&self, p: &Self::Point, rng: &mut dyn RngCore) -> Self::Point;
}

/// Point at time `t` on the shortest geodesic from `p` (t = 0) to `q` (t = 1):
/// `exp_p(t log_p q)`. The endpoints are returned exactly.
pub fn shortest_geodesic<M: Manifold + ?Sized>(
    manifold: &M,
    p: &M::Point,
    q: &M::Point,
    t: f64,
) -> Result<M::Point> {
    let mut out = manifold.allocate();
    let mut scratch = manifold.allocate();
    shortest_geodesic_mut(manifold, &mut out, &mut scratch, p, q, t)?;
    Ok(out)
}

/// In-place [`shortest_geodesic`]; `scratch` receives the tangent vector
/// `t log_p q`.
pub fn shortest_geodesic_mut<M: Manifold + ?Sized>(
    manifold: &M,
    out: &mut M::Point,
    scratch: &mut M::Point,
    p: &M::Point,
    q: &M::Point,
    t: f64,
) -> Result<()> {
    if t == 0.0 {
        out.clone_from(p);
        return Ok(());
    }
    if t == 1.0 {
        out.clone_from(q);
        return Ok(());
    }
    manifold.log_mut(scratch, p, q)?;
    scratch.scale_mut(t);
    manifold.exp_mut(out, p, scratch)
}
