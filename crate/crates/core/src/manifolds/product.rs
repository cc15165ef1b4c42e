//! Product manifolds `M_1 × … × M_k` with the `ℓ²` product metric.
//!
//! Factors may have different point shapes, so a point is a
//! [`ProductPoint`] holding one array per factor.

use std::fmt;

use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ProductPoint;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::error::{ManifoldError, Result};
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod};

/// A factor of a [`ProductManifold`].
pub type Factor = Box<dyn Manifold<Point = DMatrix<f64>>>;

pub struct ProductManifold {
    factors: Vec<Factor>,
}

impl fmt::Debug for ProductManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProductManifold({})", self.descriptor())
    }
}

impl ProductManifold {
    pub fn new(factors: Vec<Factor>) -> Self {
        assert!(!factors.is_empty(), "a product needs at least one factor");
        Self { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    fn check_arity(&self, a: &ProductPoint) -> Result<()> {
        if a.0.len() != self.factors.len() {
            return Err(ManifoldError::shape(
                format!("{} factors", self.factors.len()),
                format!("{} factors", a.0.len()),
            ));
        }
        Ok(())
    }

    /// Applies a factor operation to each factor in order, stopping at the
    /// first failure.
    fn factorwise<const K: usize>(
        &self,
        out: &mut ProductPoint,
        inputs: [&ProductPoint; K],
        mut op: impl FnMut(&Factor, &mut DMatrix<f64>, [&DMatrix<f64>; K]) -> Result<()>,
    ) -> Result<()> {
        for a in inputs {
            self.check_arity(a)?;
        }
        if out.0.len() != self.factors.len() {
            *out = self.allocate();
        }
        for (i, (m, o)) in self.factors.iter().zip(out.0.iter_mut()).enumerate() {
            let args = inputs.map(|a| &a.0[i]);
            op(m, o, args).map_err(|e| ManifoldError::component(i, e))?;
        }
        Ok(())
    }

    fn sum_factors<const K: usize>(
        &self,
        inputs: [&ProductPoint; K],
        f: impl Fn(&Factor, [&DMatrix<f64>; K]) -> f64,
    ) -> f64 {
        if inputs.iter().any(|a| self.check_arity(a).is_err()) {
            return f64::NAN;
        }
        self.factors
            .iter()
            .enumerate()
            .map(|(i, m)| f(m, inputs.map(|a| &a.0[i])))
            .sum()
    }
}

impl Manifold for ProductManifold {
    type Point = ProductPoint;

    fn descriptor(&self) -> ManifoldDescriptor {
        let factors: Vec<_> = self.factors.iter().map(|m| m.descriptor()).collect();
        let shape = vec![factors.len()];
        ManifoldDescriptor::new(ManifoldKind::Product(factors), shape, MetricTag::ProductL2)
    }

    fn manifold_dimension(&self) -> usize {
        self.factors.iter().map(|m| m.manifold_dimension()).sum()
    }

    fn injectivity_radius(&self) -> f64 {
        self.factors
            .iter()
            .map(|m| m.injectivity_radius())
            .fold(f64::INFINITY, f64::min)
    }

    fn allocate(&self) -> ProductPoint {
        ProductPoint(self.factors.iter().map(|m| m.allocate()).collect())
    }

    fn check_point(&self, p: &ProductPoint, tol: f64) -> Result<()> {
        self.check_arity(p)?;
        for (i, (m, pi)) in self.factors.iter().zip(&p.0).enumerate() {
            m.check_point(pi, tol)
                .map_err(|e| ManifoldError::component(i, e))?;
        }
        Ok(())
    }

    fn check_tangent(&self, p: &ProductPoint, x: &ProductPoint, tol: f64) -> Result<()> {
        self.check_arity(p)?;
        self.check_arity(x)?;
        for (i, m) in self.factors.iter().enumerate() {
            m.check_tangent(&p.0[i], &x.0[i], tol)
                .map_err(|e| ManifoldError::component(i, e))?;
        }
        Ok(())
    }

    fn exp_mut(&self, q: &mut ProductPoint, p: &ProductPoint, x: &ProductPoint) -> Result<()> {
        self.factorwise(q, [p, x], |m, o, [a, b]| m.exp_mut(o, a, b))
    }

    fn log_mut(&self, x: &mut ProductPoint, p: &ProductPoint, q: &ProductPoint) -> Result<()> {
        self.factorwise(x, [p, q], |m, o, [a, b]| m.log_mut(o, a, b))
    }

    fn retract_mut(
        &self,
        q: &mut ProductPoint,
        p: &ProductPoint,
        x: &ProductPoint,
        method: RetractionMethod,
    ) -> Result<()> {
        self.factorwise(q, [p, x], |m, o, [a, b]| m.retract_mut(o, a, b, method))
    }

    fn inverse_retract_mut(
        &self,
        x: &mut ProductPoint,
        p: &ProductPoint,
        q: &ProductPoint,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        self.factorwise(x, [p, q], |m, o, [a, b]| {
            m.inverse_retract_mut(o, a, b, method)
        })
    }

    fn distance(&self, p: &ProductPoint, q: &ProductPoint) -> f64 {
        self.sum_factors([p, q], |m, [a, b]| m.distance(a, b).powi(2))
            .sqrt()
    }

    fn inner(&self, p: &ProductPoint, x: &ProductPoint, y: &ProductPoint) -> f64 {
        self.sum_factors([p, x, y], |m, [a, b, c]| m.inner(a, b, c))
    }

    fn parallel_transport_mut(
        &self,
        out: &mut ProductPoint,
        p: &ProductPoint,
        q: &ProductPoint,
        x: &ProductPoint,
    ) -> Result<()> {
        self.factorwise(out, [p, q, x], |m, o, [a, b, c]| {
            m.parallel_transport_mut(o, a, b, c)
        })
    }

    fn project_point_mut(&self, out: &mut ProductPoint, a: &ProductPoint) -> Result<()> {
        self.factorwise(out, [a], |m, o, [ai]| m.project_point_mut(o, ai))
    }

    fn project_tangent_mut(&self, out: &mut ProductPoint, p: &ProductPoint, a: &ProductPoint) {
        let _ = self.factorwise(out, [p, a], |m, o, [pi, ai]| {
            m.project_tangent_mut(o, pi, ai);
            Ok(())
        });
    }

    /// Factor bases in factor order, each padded with zeros in the other
    /// factors.
    fn orthonormal_basis(&self, p: &ProductPoint) -> Result<Basis<ProductPoint>> {
        self.check_arity(p)?;
        let mut vectors = Vec::with_capacity(self.manifold_dimension());
        for (i, m) in self.factors.iter().enumerate() {
            let basis = m
                .orthonormal_basis(&p.0[i])
                .map_err(|e| ManifoldError::component(i, e))?;
            for v in basis.vectors {
                let mut e = self.zero_vector(p);
                e.0[i] = v;
                vectors.push(e);
            }
        }
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> ProductPoint {
        ProductPoint(self.factors.iter().map(|m| m.rand_point(rng)).collect())
    }

    fn rand_tangent(&self, p: &ProductPoint, rng: &mut dyn RngCore) -> ProductPoint {
        ProductPoint(
            self.factors
                .iter()
                .zip(&p.0)
                .map(|(m, pi)| m.rand_tangent(pi, rng))
                .collect(),
        )
    }
}
