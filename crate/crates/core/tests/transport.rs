//! Parallel transport: isometry, tangency, and holonomy on the sphere.

mod common;

use std::f64::consts::FRAC_PI_2;

use common::{for_each_matrix_manifold, r2_s2, rng, sample_pair};
use manifolds::{Manifold, Sphere, VectorTransportMethod};
use nalgebra::dmatrix;

fn check_isometry<M: Manifold + ?Sized>(name: &str, m: &M, seed: u64) {
    let mut r = rng(seed);
    for i in 0..1000 {
        let (p, x) = sample_pair(m, &mut r);
        let q = m.exp(&p, &x).unwrap();
        let y = m.rand_tangent(&p, &mut r);
        let z = m.rand_tangent(&p, &mut r);
        let ty = m.parallel_transport(&p, &q, &y).unwrap();
        let tz = m.parallel_transport(&p, &q, &z).unwrap();
        assert!(
            m.is_tangent(&q, &ty, 1e-8),
            "{name} sample {i}: not tangent"
        );
        let before = m.inner(&p, &y, &z);
        let after = m.inner(&q, &ty, &tz);
        let scale = m.norm(&p, &y) * m.norm(&p, &z);
        assert!(
            (before - after).abs() <= 1e-9 * scale.max(1.0),
            "{name} sample {i}: <Y,Z> {before} became {after}"
        );
    }
}

#[test]
fn parallel_transport_is_isometric() {
    for_each_matrix_manifold(|name, m| check_isometry(name, m, 21));
    check_isometry("R2 x S2", &r2_s2(), 22);
}

#[test]
fn transport_along_the_geodesic_keeps_its_velocity() {
    for_each_matrix_manifold(|name, m| {
        let mut r = rng(23);
        for _ in 0..50 {
            let (p, x) = sample_pair(m, &mut r);
            let q = m.exp(&p, &x).unwrap();
            let moved = m.parallel_transport(&p, &q, &x).unwrap();
            let mut back = m.log(&q, &p).unwrap();
            manifolds::ManifoldArray::scale_mut(&mut back, -1.0);
            let err = manifolds::ManifoldArray::max_abs_diff(&moved, &back);
            assert!(err < 1e-8 * (1.0 + m.norm(&p, &x)), "{name}: {err:e}");
        }
    });
}

#[test]
fn projection_transport_is_tangent() {
    let m = Sphere::new(2);
    let mut r = rng(24);
    for _ in 0..100 {
        let (p, x) = sample_pair(&m, &mut r);
        let q = m.exp(&p, &x).unwrap();
        let v = m
            .vector_transport(&p, &q, &x, VectorTransportMethod::Projection)
            .unwrap();
        assert!(m.is_tangent(&q, &v, 1e-12));
    }
}

/// Transporting around the boundary of one octant encloses area π/2, so by
/// Gauss–Bonnet the vector comes back rotated by π/2.
#[test]
fn octant_loop_holonomy() {
    let m = Sphere::new(2);
    let e1 = dmatrix![1.0; 0.0; 0.0];
    let e2 = dmatrix![0.0; 1.0; 0.0];
    let e3 = dmatrix![0.0; 0.0; 1.0];
    let v0 = dmatrix![0.0; 0.6; 0.8];
    let v1 = m.parallel_transport(&e1, &e2, &v0).unwrap();
    let v2 = m.parallel_transport(&e2, &e3, &v1).unwrap();
    let v3 = m.parallel_transport(&e3, &e1, &v2).unwrap();
    let cos = v0.dot(&v3);
    let sin = e1.dot(&v0.cross(&v3));
    let angle = sin.atan2(cos);
    assert!(
        (angle.abs() - FRAC_PI_2).abs() < 1e-9,
        "holonomy angle {angle}"
    );
    assert!((v3.norm() - 1.0).abs() < 1e-12);
}
