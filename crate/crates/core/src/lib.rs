//! Riemannian manifolds with closed-form geometry.
//!
//! The [`Manifold`] trait collects the geometric operations (exponential and
//! logarithmic maps, retractions, distance, metric, parallel transport,
//! projections, tangent bases). Concrete manifolds live in [`manifolds`];
//! [`ValidationManifold`], [`MetricManifold`] and [`GroupManifold`] decorate
//! any of them, and [`apps`] builds Bézier curves, Riemannian means and
//! tangent-space PCA on top of the trait.
//!
//! ```
//! use manifolds::{Manifold, Sphere};
//! use nalgebra::dmatrix;
//!
//! let s2 = Sphere::new(2);
//! let p = dmatrix![1.0; 0.0; 0.0];
//! let q = dmatrix![0.0; 1.0; 0.0];
//! assert!((s2.distance(&p, &q) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
mod array;
mod basis;
mod descriptor;
mod embedding;
mod error;
mod groups;
pub mod linalg;
mod manifold;
pub mod manifolds;
mod metric;
pub mod random;
mod validation;

pub use array::{ManifoldArray, ProductPoint};
pub use basis::Basis;
pub use descriptor::{HyperbolicRepresentation, ManifoldDescriptor, ManifoldKind, MetricTag};
pub use embedding::{Embedded, EmbeddingInfo};
pub use error::{ManifoldError, Result};
pub use groups::{GroupManifold, GroupOperation, Side};
pub use manifold::{
    shortest_geodesic, shortest_geodesic_mut, InverseRetractionMethod, Manifold, RetractionMethod,
    VectorTransportMethod, DEFAULT_TOLERANCE,
};
pub use manifolds::{
    Euclidean, Hyperbolic, PowerManifold, ProductManifold, Rotations, Sphere,
    SymmetricPositiveDefinite,
};
pub use metric::MetricManifold;
pub use validation::ValidationManifold;
