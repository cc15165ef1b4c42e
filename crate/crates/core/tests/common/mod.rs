#![allow(dead_code)]

use manifolds::{
    Euclidean, Hyperbolic, HyperbolicRepresentation, Manifold, ManifoldArray, PowerManifold,
    ProductManifold, Rotations, Sphere, SymmetricPositiveDefinite,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest tangent norm used when sampling: half the injectivity radius,
/// capped for the noncompact manifolds.
pub fn sample_radius<M: Manifold + ?Sized>(m: &M) -> f64 {
    (0.5 * m.injectivity_radius()).min(3.0)
}

/// Random tangent vector at `p` with Riemannian norm exactly `norm`
/// (up to rounding).
pub fn tangent_with_norm<M: Manifold + ?Sized>(
    m: &M,
    p: &M::Point,
    norm: f64,
    rng: &mut ChaCha8Rng,
) -> M::Point {
    let mut x = m.rand_tangent(p, rng);
    let n = m.norm(p, &x);
    x.scale_mut(norm / n);
    x
}

/// Random point and tangent vector with norm uniform in `[0, sample_radius)`.
pub fn sample_pair<M: Manifold + ?Sized>(m: &M, rng: &mut ChaCha8Rng) -> (M::Point, M::Point) {
    let p = m.rand_point(rng);
    let r = rng.random::<f64>() * sample_radius(m);
    let x = tangent_with_norm(m, &p, r, rng);
    (p, x)
}

pub fn hyperbolic_models() -> [Hyperbolic; 3] {
    [
        HyperbolicRepresentation::Hyperboloid,
        HyperbolicRepresentation::PoincareBall,
        HyperbolicRepresentation::PoincareHalfSpace,
    ]
    .map(|r| Hyperbolic::new(2, r))
}

pub fn spd3_power() -> PowerManifold<SymmetricPositiveDefinite> {
    PowerManifold::new(SymmetricPositiveDefinite::new(3), vec![2, 2])
}

pub fn r2_s2() -> ProductManifold {
    ProductManifold::new(vec![Box::new(Euclidean::new(2)), Box::new(Sphere::new(2))])
}

/// Runs `f` on every base manifold with matrix points used across the
/// property suites.
pub fn for_each_matrix_manifold(
    mut f: impl FnMut(&str, &dyn Manifold<Point = nalgebra::DMatrix<f64>>),
) {
    f("Euclidean(3)", &Euclidean::new(3));
    f("Sphere(2)", &Sphere::new(2));
    f("SPD(3)", &SymmetricPositiveDefinite::new(3));
    f("SO(3)", &Rotations::new(3));
    f("SO(4)", &Rotations::new(4));
    for h in hyperbolic_models() {
        f(&format!("{:?}", h.representation()), &h);
    }
    f("SPD(3)^(2x2)", &spd3_power());
}
