use nalgebra::DMatrix;
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;

/// Matrix with independent standard normal entries.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut dyn RngCore) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Symmetric matrix `(G + G^T) / 2` with Gaussian `G`.
pub fn gaussian_symmetric(n: usize, rng: &mut dyn RngCore) -> DMatrix<f64> {
    crate::linalg::symmetrize(&gaussian_matrix(n, n, rng))
}
