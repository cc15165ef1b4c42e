//! Principal component analysis in the tangent space at the Riemannian mean.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::apps::mean::{riemannian_mean_gd, MeanConfig};
use crate::basis::Basis;
use crate::error::{ManifoldError, Result};
use crate::manifold::Manifold;

#[derive(Debug, Clone)]
pub struct TpcaResult<P> {
    pub mean: P,
    /// Basis of the tangent space at `mean` in which `components` are written.
    pub basis: Basis<P>,
    /// Principal directions as columns, in basis coordinates.
    pub components: DMatrix<f64>,
    /// Variance along each component, in descending order.
    pub variances: DVector<f64>,
    /// Coordinates of `log_mean(p_k)`, one column per data point.
    pub coordinates: DMatrix<f64>,
}

/// Tangent-space PCA:
/// 1. compute the Riemannian mean by gradient descent,
/// 2. map the data to `log_mean(p_k)`,
/// 3. take coordinates in the default orthonormal basis at the mean,
/// 4. eigendecompose the sample covariance `(1/(N-1)) Σ (c_k - c̄)(c_k - c̄)^T`.
///
/// Each component is signed so that its entry of largest magnitude is positive.
pub fn tangent_pca<M: Manifold + ?Sized>(
    manifold: &M,
    points: &[M::Point],
    cfg: &MeanConfig,
) -> Result<TpcaResult<M::Point>> {
    let n = points.len();
    if n < 2 {
        return Err(ManifoldError::InvalidArgument(format!(
            "tangent PCA needs at least 2 points, got {n}"
        )));
    }
    let mean = riemannian_mean_gd(manifold, points, None, cfg)?.mean;
    let basis = manifold.orthonormal_basis(&mean)?;
    let d = basis.len();

    let mut coordinates = DMatrix::zeros(d, n);
    let mut x = manifold.allocate();
    for (k, p) in points.iter().enumerate() {
        manifold
            .log_mut(&mut x, &mean, p)
            .map_err(|e| ManifoldError::component(k, e))?;
        let c = manifold.get_coordinates(&mean, &x, &basis)?;
        coordinates.set_column(k, &c);
    }

    let centroid = coordinates.column_mean();
    let mut centered = coordinates.clone();
    for mut column in centered.column_iter_mut() {
        column -= &centroid;
    }
    let mut covariance = &centered * centered.transpose() / (n - 1) as f64;
    crate::linalg::symmetrize_mut(&mut covariance);

    let eig = SymmetricEigen::new(covariance);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut components = DMatrix::zeros(d, d);
    let mut variances = DVector::zeros(d);
    for (j, &src) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(src).into_owned();
        if v[v.iamax()] < 0.0 {
            v.neg_mut();
        }
        components.set_column(j, &v);
        variances[j] = eig.eigenvalues[src];
    }

    Ok(TpcaResult {
        mean,
        basis,
        components,
        variances,
        coordinates,
    })
}
