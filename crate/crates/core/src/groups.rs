//! Lie group structure on top of a manifold: Euclidean space under addition
//! and the rotations under matrix multiplication.
//!
//! Lie algebra elements are tangent vectors at the identity in the base
//! manifold's ambient storage.

use nalgebra::{DMatrix, DVector};
use rand::RngCore;

use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind};
use crate::error::{ManifoldError, Result};
use crate::linalg::skew_part;
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod, VectorTransportMethod};
use crate::manifolds::Rotations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupOperation {
    /// `p ∘ q = p + q`
    Addition,
    /// `p ∘ q = p q`
    Multiplication,
}

/// Which side a translation composes on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `g ∘ p`
    Left,
    /// `p ∘ g`
    Right,
}

#[derive(Debug, Clone)]
pub struct GroupManifold<M> {
    base: M,
    operation: GroupOperation,
    shape: (usize, usize),
    rotations: Option<Rotations>,
}

impl<M: Manifold<Point = DMatrix<f64>>> GroupManifold<M> {
    /// Accepts Euclidean space with [`GroupOperation::Addition`] and the
    /// rotations with [`GroupOperation::Multiplication`].
    pub fn new(base: M, operation: GroupOperation) -> Result<Self> {
        let descriptor = base.descriptor();
        let rotations = match (&descriptor.kind, operation) {
            (ManifoldKind::Euclidean, GroupOperation::Addition) => None,
            (ManifoldKind::Rotations, GroupOperation::Multiplication) => {
                Some(Rotations::new(descriptor.shape[0]))
            }
            _ => {
                return Err(ManifoldError::InvalidArgument(format!(
                    "{operation:?} does not make {descriptor} a group"
                )))
            }
        };
        let shape = base.allocate().shape();
        Ok(Self {
            base,
            operation,
            shape,
            rotations,
        })
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn operation(&self) -> GroupOperation {
        self.operation
    }

    fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.shape() != self.shape {
            return Err(ManifoldError::shape(
                format!("{}×{}", self.shape.0, self.shape.1),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }

    fn rotations(&self) -> &Rotations {
        self.rotations
            .as_ref()
            .expect("multiplicative groups are built on rotations")
    }

    pub fn identity_element(&self) -> DMatrix<f64> {
        match self.operation {
            GroupOperation::Addition => DMatrix::zeros(self.shape.0, self.shape.1),
            GroupOperation::Multiplication => DMatrix::identity(self.shape.0, self.shape.1),
        }
    }

    pub fn compose_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
    ) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        match self.operation {
            GroupOperation::Addition => {
                out.clone_from(p);
                *out += q;
            }
            GroupOperation::Multiplication => {
                if out.shape() != self.shape {
                    *out = self.identity_element();
                }
                p.mul_to(q, out);
            }
        }
        Ok(())
    }

    pub fn compose(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.compose_mut(&mut out, p, q)?;
        Ok(out)
    }

    /// `-p` under addition, `p^T` for rotations.
    pub fn inverse_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        match self.operation {
            GroupOperation::Addition => {
                out.clone_from(p);
                out.neg_mut();
            }
            GroupOperation::Multiplication => *out = p.transpose(),
        }
        Ok(())
    }

    pub fn inverse(&self, p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.inverse_mut(&mut out, p)?;
        Ok(out)
    }

    pub fn translate_mut(
        &self,
        out: &mut DMatrix<f64>,
        g: &DMatrix<f64>,
        p: &DMatrix<f64>,
        side: Side,
    ) -> Result<()> {
        match side {
            Side::Left => self.compose_mut(out, g, p),
            Side::Right => self.compose_mut(out, p, g),
        }
    }

    pub fn translate(
        &self,
        g: &DMatrix<f64>,
        p: &DMatrix<f64>,
        side: Side,
    ) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.translate_mut(&mut out, g, p, side)?;
        Ok(out)
    }

    /// Undoes [`GroupManifold::translate`] by `g` on the same side.
    pub fn inverse_translate_mut(
        &self,
        out: &mut DMatrix<f64>,
        g: &DMatrix<f64>,
        p: &DMatrix<f64>,
        side: Side,
    ) -> Result<()> {
        let g_inv = self.inverse(g)?;
        self.translate_mut(out, &g_inv, p, side)
    }

    pub fn inverse_translate(
        &self,
        g: &DMatrix<f64>,
        p: &DMatrix<f64>,
        side: Side,
    ) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.inverse_translate_mut(&mut out, g, p, side)?;
        Ok(out)
    }

    /// Group exponential of a Lie algebra element: `X` itself under
    /// addition, the matrix exponential of the skew part of `X` for rotations.
    pub fn group_exp_mut(&self, out: &mut DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.check_shape(x)?;
        match self.operation {
            GroupOperation::Addition => out.clone_from(x),
            GroupOperation::Multiplication => *out = self.rotations().skew_exp(&skew_part(x)),
        }
        Ok(())
    }

    pub fn group_exp(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.group_exp_mut(&mut out, x)?;
        Ok(out)
    }

    /// Inverse of [`GroupManifold::group_exp`]; fails for half turns.
    pub fn group_log_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        match self.operation {
            GroupOperation::Addition => out.clone_from(p),
            GroupOperation::Multiplication => *out = self.rotations().rotation_log(p)?,
        }
        Ok(())
    }

    pub fn group_log(&self, p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let mut out = self.identity_element();
        self.group_log_mut(&mut out, p)?;
        Ok(out)
    }
}

impl<M: Manifold<Point = DMatrix<f64>>> Manifold for GroupManifold<M> {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        self.base.descriptor()
    }

    fn manifold_dimension(&self) -> usize {
        self.base.manifold_dimension()
    }

    fn injectivity_radius(&self) -> f64 {
        self.base.injectivity_radius()
    }

    fn allocate(&self) -> DMatrix<f64> {
        self.base.allocate()
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.base.check_point(p, tol)
    }

    fn check_tangent(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.base.check_tangent(p, x, tol)
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.base.exp_mut(q, p, x)
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        self.base.log_mut(x, p, q)
    }

    fn retract_mut(
        &self,
        q: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        method: RetractionMethod,
    ) -> Result<()> {
        self.base.retract_mut(q, p, x, method)
    }

    fn inverse_retract_mut(
        &self,
        x: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        self.base.inverse_retract_mut(x, p, q, method)
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        self.base.distance(p, q)
    }

    fn inner(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        self.base.inner(p, x, y)
    }

    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.base.parallel_transport_mut(out, p, q, x)
    }

    fn vector_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
        method: VectorTransportMethod,
    ) -> Result<()> {
        self.base.vector_transport_mut(out, p, q, x, method)
    }

    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.base.project_point_mut(out, a)
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) {
        self.base.project_tangent_mut(out, p, a)
    }

    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.base.orthonormal_basis(p)
    }

    fn get_coordinates(
        &self,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        basis: &Basis<DMatrix<f64>>,
    ) -> Result<DVector<f64>> {
        self.base.get_coordinates(p, x, basis)
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        self.base.rand_point(rng)
    }

    fn rand_tangent(&self, p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        self.base.rand_tangent(p, rng)
    }
}
