//! Concrete manifolds.

mod euclidean;
mod hyperbolic;
mod power;
mod product;
mod rotations;
mod spd;
mod sphere;

pub use euclidean::Euclidean;
pub use hyperbolic::{convert_point, convert_tangent, minkowski_dot, Hyperbolic};
pub use power::PowerManifold;
pub use product::{Factor, ProductManifold};
pub use rotations::{Rotations, HALF_TURN_MARGIN};
pub use spd::SymmetricPositiveDefinite;
pub use sphere::{Sphere, ANTIPODAL_MARGIN};
