//! Applications built on the manifold interface: Bézier curves, Riemannian
//! means and variance, and tangent-space PCA.

mod bezier;
mod mean;
mod pca;

pub use bezier::{bezier_eval, BezierSpec};
pub use mean::{
    karcher_cost, karcher_gradient, riemannian_mean_gd, riemannian_mean_interp,
    riemannian_variance, MeanConfig, MeanResult,
};
pub use pca::{tangent_pca, TpcaResult};
