//! The rotation group `SO(n)` as a Riemannian manifold.
//!
//! Tangent vectors at `p` are stored as ambient matrices `X = p Ω` with `Ω`
//! skew-symmetric, and the metric is the Frobenius inner product of those
//! ambient matrices. With this convention a rotation by angle `θ` in one
//! plane lies at distance `√2 θ` from the identity.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::linalg::{
    polar_rotation, rotation_log_norm_sq_schur, rotation_log_schur, skew_exp_schur, skew_part,
    so3_angle, so3_exp, so3_log,
};
use crate::manifold::{Manifold, RetractionMethod};
use crate::random::gaussian_matrix;

/// `log` refuses rotation angles beyond `π - HALF_TURN_MARGIN`.
pub const HALF_TURN_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotations {
    n: usize,
}

impl Rotations {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "SO(n) needs n ≥ 2 for a positive dimension");
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.shape() != (self.n, self.n) {
            return Err(ManifoldError::shape(
                format!("{0}×{0}", self.n),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }

    /// Matrix exponential of a skew-symmetric matrix.
    pub fn skew_exp(&self, omega: &DMatrix<f64>) -> DMatrix<f64> {
        match self.n {
            2 => {
                let theta = 0.5 * (omega[(1, 0)] - omega[(0, 1)]);
                let (s, c) = theta.sin_cos();
                DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
            }
            3 => so3_exp(omega),
            _ => skew_exp_schur(omega),
        }
    }

    /// Principal logarithm of a rotation; `LogUndefined` near a half turn.
    pub fn rotation_log(&self, r: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let max_angle = PI - HALF_TURN_MARGIN;
        match self.n {
            2 => {
                let theta = r[(1, 0)].atan2(r[(0, 0)]);
                if theta.abs() > max_angle {
                    return Err(ManifoldError::LogUndefined(format!(
                        "rotation angle {theta} is too close to π"
                    )));
                }
                Ok(DMatrix::from_row_slice(2, 2, &[0.0, -theta, theta, 0.0]))
            }
            3 => so3_log(r, max_angle),
            _ => rotation_log_schur(r, max_angle),
        }
    }

    fn relative(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        Ok(p.transpose() * q)
    }
}

impl Manifold for Rotations {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor::new(ManifoldKind::Rotations, vec![self.n], MetricTag::Frobenius)
    }

    fn manifold_dimension(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn injectivity_radius(&self) -> f64 {
        SQRT_2 * PI
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.n, self.n)
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(p)?;
        if !p.is_finite() {
            return Err(ManifoldError::Validation("non-finite entries".into()));
        }
        let residual = (p.transpose() * p).max_abs_diff(&DMatrix::identity(self.n, self.n));
        if residual > tol {
            return Err(ManifoldError::Validation(format!(
                "matrix is not orthogonal (|R^T R - I| = {residual:e})"
            )));
        }
        let det = p.determinant();
        if !(det > 0.0) {
            return Err(ManifoldError::Validation(format!(
                "orthogonal matrix has determinant {det}"
            )));
        }
        Ok(())
    }

    fn check_tangent(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(x)?;
        let omega = p.transpose() * x;
        let residual = (&omega + omega.transpose()).amax();
        if !(residual <= tol) {
            return Err(ManifoldError::Validation(format!(
                "p^T X is not skew-symmetric (residual {residual:e})"
            )));
        }
        Ok(())
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        let omega = skew_part(&self.relative(p, x)?);
        *q = p * self.skew_exp(&omega);
        Ok(())
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        let omega = self.rotation_log(&self.relative(p, q)?)?;
        *x = p * omega;
        Ok(())
    }

    fn retract_mut(
        &self,
        q: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        method: RetractionMethod,
    ) -> Result<()> {
        match method {
            RetractionMethod::Exponential => self.exp_mut(q, p, x),
            RetractionMethod::Projection => {
                self.check_shape(p)?;
                self.check_shape(x)?;
                *q = polar_rotation(&(p + x))?;
                Ok(())
            }
        }
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        let r = match self.relative(p, q) {
            Ok(r) => r,
            Err(_) => return f64::NAN,
        };
        match self.n {
            2 => SQRT_2 * r[(1, 0)].atan2(r[(0, 0)]).abs(),
            3 => SQRT_2 * so3_angle(&r),
            _ => rotation_log_norm_sq_schur(&r).sqrt(),
        }
    }

    fn inner(&self, _p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        x.ambient_dot(y)
    }

    /// Along `γ(t) = p exp(tΩ)` the left-trivialized vector `ξ = p^T X`
    /// evolves as `exp(-tΩ/2) ξ exp(tΩ/2)`.
    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.check_shape(x)?;
        let omega = self
            .rotation_log(&self.relative(p, q)?)
            .map_err(|e| ManifoldError::TransportUndefined(e.to_string()))?;
        let half = self.skew_exp(&(&omega * 0.5));
        let xi = skew_part(&(p.transpose() * x));
        *out = q * half.transpose() * xi * half;
        Ok(())
    }

    /// Nearest rotation in Frobenius norm (polar factor with determinant fix).
    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.check_shape(a)?;
        if !a.is_finite() {
            return Err(ManifoldError::ProjectionUndefined(
                "non-finite entries".into(),
            ));
        }
        *out = polar_rotation(a)?;
        Ok(())
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) {
        *out = p * skew_part(&(p.transpose() * a));
    }

    /// `p (e_i e_j^T − e_j e_i^T) / √2` for `i < j` in lexicographic order.
    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut vectors = Vec::with_capacity(self.manifold_dimension());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let mut e = self.allocate();
                e[(i, j)] = r;
                e[(j, i)] = -r;
                vectors.push(p * e);
            }
        }
        Ok(Basis::new(p.clone(), vectors))
    }

    /// Haar-distributed rotation: QR of a Gaussian matrix with the signs of
    /// `diag(R)` folded into `Q`, then a column flip if `det Q = −1`.
    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let g = gaussian_matrix(self.n, self.n, rng);
        let qr = g.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..self.n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        if q.determinant() < 0.0 {
            q.column_mut(0).neg_mut();
        }
        q
    }

    fn rand_tangent(&self, p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        p * skew_part(&gaussian_matrix(self.n, self.n, rng))
    }
}

impl Embedded for Rotations {
    fn embedding_info(&self) -> EmbeddingInfo {
        EmbeddingInfo {
            ambient_shape: vec![self.n, self.n],
            isometric: true,
        }
    }
}
