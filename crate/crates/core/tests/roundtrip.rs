//! `log ∘ exp` and distance along exp on seeded random samples.

mod common;

use common::{for_each_matrix_manifold, r2_s2, rng, sample_pair};
use manifolds::{
    InverseRetractionMethod, Manifold, ManifoldArray, RetractionMethod, Rotations, Sphere,
};

fn check_roundtrip<M: Manifold + ?Sized>(name: &str, m: &M, seed: u64, samples: usize) {
    let mut rng = rng(seed);
    for i in 0..samples {
        let (p, x) = sample_pair(m, &mut rng);
        let q = m.exp(&p, &x).unwrap();
        assert!(
            m.is_point(&q, 1e-9),
            "{name} sample {i}: exp left the manifold"
        );
        let y = m.log(&p, &q).unwrap();
        let norm_x = m.norm(&p, &x);
        let err = m.norm(&p, &y.difference(&x)) / norm_x.max(1e-12);
        assert!(err < 1e-9, "{name} sample {i}: relative log error {err:e}");
        let d = m.distance(&p, &q);
        assert!(
            (d - norm_x).abs() < 1e-9,
            "{name} sample {i}: |d - |X|| = {:e}",
            (d - norm_x).abs()
        );
    }
}

#[test]
fn log_inverts_exp_on_matrix_manifolds() {
    for_each_matrix_manifold(|name, m| check_roundtrip(name, m, 7, 1000));
}

#[test]
fn log_inverts_exp_on_product() {
    check_roundtrip("R2 x S2", &r2_s2(), 8, 1000);
}

#[test]
fn exp_of_zero_is_identity_map() {
    for_each_matrix_manifold(|name, m| {
        let mut r = rng(3);
        let p = m.rand_point(&mut r);
        let q = m.exp(&p, &m.zero_vector(&p)).unwrap();
        assert!(q.max_abs_diff(&p) < 1e-15, "{name}");
        assert!(m.log(&p, &p).unwrap().ambient_norm() < 1e-12, "{name}");
        assert!(m.distance(&p, &p) < 1e-12, "{name}");
    });
}

#[test]
fn sphere_projection_retraction_roundtrip() {
    let m = Sphere::new(4);
    let mut r = rng(11);
    for _ in 0..200 {
        let (p, x) = sample_pair(&m, &mut r);
        let q = m.retract(&p, &x, RetractionMethod::Projection).unwrap();
        assert!(m.is_point(&q, 1e-12));
        let y = m
            .inverse_retract(&p, &q, InverseRetractionMethod::Projection)
            .unwrap();
        assert!(y.max_abs_diff(&x) < 1e-9 * (1.0 + x.ambient_norm()));
    }
}

#[test]
fn rotation_projection_retraction_stays_on_group() {
    let m = Rotations::new(3);
    let mut r = rng(12);
    for _ in 0..200 {
        let (p, x) = sample_pair(&m, &mut r);
        let q = m.retract(&p, &x, RetractionMethod::Projection).unwrap();
        assert!(m.is_point(&q, 1e-12));
    }
    let p = m.rand_point(&mut r);
    assert!(m
        .inverse_retract(&p, &p, InverseRetractionMethod::Projection)
        .is_err());
}
