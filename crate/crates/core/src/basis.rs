use crate::array::ManifoldArray;
use crate::error::{ManifoldError, Result};

/// Tolerance on the ambient difference between a basis' base point and the
/// point it is used at.
const BASE_POINT_TOLERANCE: f64 = 1e-12;

/// An ordered orthonormal basis of the tangent space at `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis<P> {
    pub base: P,
    pub vectors: Vec<P>,
}

impl<P: ManifoldArray> Basis<P> {
    pub fn new(base: P, vectors: Vec<P>) -> Self {
        Self { base, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub(crate) fn check_base(&self, p: &P, dimension: usize) -> Result<()> {
        let scale = 1.0 + p.ambient_norm();
        if self.base.max_abs_diff(p) > BASE_POINT_TOLERANCE * scale {
            return Err(ManifoldError::InvalidArgument(
                "basis is attached to a different base point".into(),
            ));
        }
        if self.vectors.len() != dimension {
            return Err(ManifoldError::shape(
                format!("{dimension} basis vectors"),
                format!("{} basis vectors", self.vectors.len()),
            ));
        }
        Ok(())
    }
}
