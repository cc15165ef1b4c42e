//! Symmetric positive definite matrices with the affine-invariant metric
//! `<X, Y>_p = tr(p^{-1} X p^{-1} Y)`.
//!
//! Every closed form needs a factor `s` with `p = s s^T`. We use the
//! Cholesky factor `L`; by affine invariance `exp_p(X) = L mexp(L^{-1} X L^{-T}) L^T`
//! and the other maps agree with the symmetric square root versions.

use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::linalg::{
    cholesky_lower, spectral_apply, sym_eigen, sym_exp, sym_log, sym_sqrt_and_inv_sqrt, symmetrize,
    symmetrize_mut, unwhiten, whiten, SPD_EIGENVALUE_FLOOR,
};
use crate::manifold::Manifold;
use crate::random::gaussian_symmetric;

/// Scale of the symmetric Gaussian fed to `exp_I` by [`Manifold::rand_point`].
const RANDOM_POINT_SCALE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricPositiveDefinite {
    n: usize,
}

impl SymmetricPositiveDefinite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "matrix size must be at least 1");
        Self { n }
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

    fn factor(&self, p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.check_shape(p)?;
        cholesky_lower(&symmetrize(p))
    }

    /// Eigenvalues of `p^{-1/2} q p^{-1/2}`.
    fn relative_eigenvalues(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<Vec<f64>> {
        let l = self.factor(p)?;
        self.check_shape(q)?;
        let w = whiten(&l, &symmetrize(q));
        Ok(sym_eigen(&w).eigenvalues.iter().copied().collect())
    }
}

fn max_asymmetry(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}

impl Manifold for SymmetricPositiveDefinite {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor::new(
            ManifoldKind::SymmetricPositiveDefinite,
            vec![self.n],
            MetricTag::LinearAffine,
        )
    }

    fn manifold_dimension(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    fn injectivity_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.n, self.n)
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(p)?;
        if !p.is_finite() {
            return Err(ManifoldError::Validation("non-finite entries".into()));
        }
        let asym = max_asymmetry(p);
        if asym > tol {
            return Err(ManifoldError::Validation(format!(
                "matrix is not symmetric (asymmetry {asym:e})"
            )));
        }
        let min = sym_eigen(p)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if !(min > tol) {
            return Err(ManifoldError::Validation(format!(
                "matrix is not positive definite (smallest eigenvalue {min:e})"
            )));
        }
        Ok(())
    }

    fn check_tangent(&self, _p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(x)?;
        if !x.is_finite() {
            return Err(ManifoldError::Validation("non-finite entries".into()));
        }
        let asym = max_asymmetry(x);
        if asym > tol {
            return Err(ManifoldError::Validation(format!(
                "tangent vector is not symmetric (asymmetry {asym:e})"
            )));
        }
        Ok(())
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        let l = self.factor(p)?;
        self.check_shape(x)?;
        let w = whiten(&l, &symmetrize(x));
        *q = unwhiten(&l, &sym_exp(&w));
        Ok(())
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        let l = self.factor(p)?;
        self.check_shape(q)?;
        if p == q {
            *x = DMatrix::zeros(self.n, self.n);
            return Ok(());
        }
        let w = whiten(&l, &symmetrize(q));
        *x = unwhiten(&l, &sym_log(&w)?);
        Ok(())
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        if p == q && self.factor(p).is_ok() {
            return 0.0;
        }
        match self.relative_eigenvalues(p, q) {
            Ok(values) => values.iter().map(|l| l.ln().powi(2)).sum::<f64>().sqrt(),
            Err(_) => f64::NAN,
        }
    }

    fn inner(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        match self.factor(p) {
            Ok(l) => whiten(&l, x).ambient_dot(&whiten(&l, y)),
            Err(_) => f64::NAN,
        }
    }

    /// `E X E^T` with `E = (q p^{-1})^{1/2} = s (s^{-1} q s^{-1})^{1/2} s^{-1}`,
    /// `s = p^{1/2}`.
    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        self.check_shape(x)?;
        let (s, s_inv) = sym_sqrt_and_inv_sqrt(p)?;
        let a = symmetrize(&(&s_inv * q * &s_inv));
        let eig = sym_eigen(&a);
        if eig
            .eigenvalues
            .iter()
            .any(|l| !(*l >= SPD_EIGENVALUE_FLOOR))
        {
            return Err(ManifoldError::Numerical(
                "q is not positive definite".into(),
            ));
        }
        let a_sqrt = spectral_apply(&eig, f64::sqrt);
        let e = &s * a_sqrt * &s_inv;
        let mut moved = &e * symmetrize(x) * e.transpose();
        symmetrize_mut(&mut moved);
        *out = moved;
        Ok(())
    }

    /// Symmetrizes and clamps eigenvalues from below at the SPD floor.
    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.check_shape(a)?;
        if !a.is_finite() {
            return Err(ManifoldError::ProjectionUndefined(
                "non-finite entries".into(),
            ));
        }
        let eig = sym_eigen(a);
        *out = spectral_apply(&eig, |l| l.max(SPD_EIGENVALUE_FLOOR.sqrt()));
        Ok(())
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, _p: &DMatrix<f64>, a: &DMatrix<f64>) {
        *out = symmetrize(a);
    }

    /// `p^{1/2} E_ij p^{1/2}` over the Frobenius-orthonormal symmetric basis
    /// `E_ii = e_i e_i^T`, `E_ij = (e_i e_j^T + e_j e_i^T) / √2` (i < j).
    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let (s, _) = sym_sqrt_and_inv_sqrt(p)?;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut vectors = Vec::with_capacity(self.manifold_dimension());
        for i in 0..self.n {
            for j in i..self.n {
                let mut e = self.allocate();
                if i == j {
                    e[(i, i)] = 1.0;
                } else {
                    e[(i, j)] = r;
                    e[(j, i)] = r;
                }
                let mut v = &s * e * &s;
                symmetrize_mut(&mut v);
                vectors.push(v);
            }
        }
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        sym_exp(&(gaussian_symmetric(self.n, rng) * RANDOM_POINT_SCALE))
    }

    fn rand_tangent(&self, _p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        gaussian_symmetric(self.n, rng)
    }
}

impl Embedded for SymmetricPositiveDefinite {
    fn embedding_info(&self) -> EmbeddingInfo {
        EmbeddingInfo {
            ambient_shape: vec![self.n, self.n],
            isometric: false,
        }
    }
}
