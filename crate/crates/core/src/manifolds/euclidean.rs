use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod};
use crate::random::gaussian_matrix;

/// Flat space `R^{n×m}` with the Euclidean metric. Points and tangent
/// vectors are `n×m` matrices (`m = 1` for vectors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    rows: usize,
    cols: usize,
}

impl Euclidean {
    pub fn new(n: usize) -> Self {
        Self::matrices(n, 1)
    }

    pub fn matrices(rows: usize, cols: usize) -> Self {
        assert!(rows * cols >= 1, "Euclidean space needs dimension ≥ 1");
        Self { rows, cols }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub(crate) fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.shape() != (self.rows, self.cols) {
            return Err(ManifoldError::shape(
                format!("{}×{}", self.rows, self.cols),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }
}

impl Manifold for Euclidean {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        let shape = if self.cols == 1 {
            vec![self.rows]
        } else {
            vec![self.rows, self.cols]
        };
        ManifoldDescriptor::new(ManifoldKind::Euclidean, shape, MetricTag::Euclidean)
    }

    fn manifold_dimension(&self) -> usize {
        self.rows * self.cols
    }

    fn injectivity_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.rows, self.cols)
    }

    fn check_point(&self, p: &DMatrix<f64>, _tol: f64) -> Result<()> {
        self.check_shape(p)?;
        if !p.is_finite() {
            return Err(ManifoldError::Validation("non-finite entries".into()));
        }
        Ok(())
    }

    fn check_tangent(&self, _p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_point(x, tol)
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(x)?;
        q.clone_from(p);
        *q += x;
        Ok(())
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        x.clone_from(q);
        *x -= p;
        Ok(())
    }

    fn retract_mut(
        &self,
        q: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        _method: RetractionMethod,
    ) -> Result<()> {
        self.exp_mut(q, p, x)
    }

    fn inverse_retract_mut(
        &self,
        x: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        _method: InverseRetractionMethod,
    ) -> Result<()> {
        self.log_mut(x, p, q)
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        p.iter()
            .zip(q.iter())
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }

    fn inner(&self, _p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        x.ambient_dot(y)
    }

    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        _p: &DMatrix<f64>,
        _q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.check_shape(x)?;
        out.clone_from(x);
        Ok(())
    }

    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.check_shape(a)?;
        out.clone_from(a);
        Ok(())
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, _p: &DMatrix<f64>, a: &DMatrix<f64>) {
        *out = a.clone();
    }

    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let vectors = (0..self.rows * self.cols)
            .map(|k| {
                let mut e = self.allocate();
                e[k] = 1.0;
                e
            })
            .collect();
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        gaussian_matrix(self.rows, self.cols, rng)
    }

    fn rand_tangent(&self, _p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        gaussian_matrix(self.rows, self.cols, rng)
    }
}

impl Embedded for Euclidean {
    fn embedding_info(&self) -> EmbeddingInfo {
        EmbeddingInfo {
            ambient_shape: vec![self.rows, self.cols],
            isometric: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DMatrix<f64> {
        DMatrix::from_column_slice(x.len(), 1, x)
    }

    #[test]
    fn closed_forms() {
        let m = Euclidean::new(3);
        let p = v(&[1.0, 2.0, 3.0]);
        assert_eq!(
            m.exp(&p, &v(&[1.0, 0.0, 0.0])).unwrap(),
            v(&[2.0, 2.0, 3.0])
        );
        assert_eq!(m.distance(&p, &p), 0.0);
        assert_eq!(m.inner(&p, &p, &v(&[1.0, 0.0, 0.0])), 1.0);
        let q = v(&[-1.0, 0.5, 7.0]);
        assert_eq!(m.log(&p, &q).unwrap(), &q - &p);
        assert_eq!(
            m.retract(&p, &q, RetractionMethod::Projection).unwrap(),
            &p + &q
        );
        assert_eq!(
            m.inverse_retract(&p, &q, InverseRetractionMethod::Projection)
                .unwrap(),
            &q - &p
        );
        assert_eq!(m.manifold_dimension(), 3);
    }

    #[test]
    fn rejects_wrong_shape() {
        let m = Euclidean::new(3);
        let bad = v(&[1.0, 2.0]);
        assert!(matches!(
            m.exp(&bad, &bad),
            Err(ManifoldError::ShapeMismatch { .. })
        ));
        assert!(!m.is_point(&bad, 1e-8));
    }

    #[test]
    fn matrix_shape_dimension() {
        let m = Euclidean::matrices(2, 3);
        assert_eq!(m.manifold_dimension(), 6);
        assert_eq!(m.descriptor().manifold_dimension(), 6);
    }
}
