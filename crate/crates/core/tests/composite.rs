//! Power and product manifolds against their factors.

mod common;

use common::{r2_s2, rng, sample_pair, spd3_power};
use manifolds::{
    Euclidean, Manifold, ManifoldArray, ManifoldError, PowerManifold, ProductManifold,
    ProductPoint, Sphere, SymmetricPositiveDefinite,
};
use nalgebra::{dmatrix, DMatrix};

#[test]
fn power_operations_commute_with_component_extraction() {
    let m = spd3_power();
    let base = SymmetricPositiveDefinite::new(3);
    let mut r = rng(51);
    for _ in 0..50 {
        let (p, x) = sample_pair(&m, &mut r);
        let q = m.exp(&p, &x).unwrap();
        let v = m.log(&p, &q).unwrap();
        let y = m.rand_tangent(&p, &mut r);
        let t = m.parallel_transport(&p, &q, &y).unwrap();
        let mut d2 = 0.0;
        for i in 0..m.cells() {
            let (pi, xi, qi, yi) = (
                m.component(&p, i),
                m.component(&x, i),
                m.component(&q, i),
                m.component(&y, i),
            );
            assert_eq!(m.component(&q, i), base.exp(&pi, &xi).unwrap());
            assert_eq!(m.component(&v, i), base.log(&pi, &qi).unwrap());
            assert_eq!(
                m.component(&t, i),
                base.parallel_transport(&pi, &qi, &yi).unwrap()
            );
            d2 += base.distance(&pi, &qi).powi(2);
        }
        let d = m.distance(&p, &q);
        assert!((d * d - d2).abs() <= 1e-9 * d2.max(1e-300));
        let inner: f64 = (0..m.cells())
            .map(|i| {
                base.inner(
                    &m.component(&p, i),
                    &m.component(&x, i),
                    &m.component(&y, i),
                )
            })
            .sum();
        assert!((m.inner(&p, &x, &y) - inner).abs() <= 1e-12 * (1.0 + inner.abs()));
    }
}

#[test]
fn power_layout_is_component_fastest() {
    let m = PowerManifold::new(Euclidean::matrices(2, 3), vec![4, 5]);
    let p = m.allocate();
    assert_eq!(p.shape(), (6, 20));
    let mut q = p.clone();
    let c = DMatrix::from_fn(2, 3, |i, j| (10 * i + j) as f64);
    let cell = m.linear_index(&[3, 2]);
    assert_eq!(cell, 3 + 4 * 2);
    m.set_component(&mut q, cell, &c);
    // The six entries of the element are contiguous in storage.
    let start = cell * 6;
    assert_eq!(&q.as_slice()[start..start + 6], c.as_slice());
    assert_eq!(m.component(&q, cell), c);
}

#[test]
fn degenerate_grid_matches_base() {
    let base = Sphere::new(2);
    let m = PowerManifold::new(base, vec![1]);
    let mut r = rng(52);
    let (p, x) = sample_pair(&base, &mut r);
    assert_eq!(m.exp(&p, &x).unwrap(), base.exp(&p, &x).unwrap());
    let q = base.rand_point(&mut r);
    assert_eq!(m.distance(&p, &q), base.distance(&p, &q));
    assert_eq!(m.manifold_dimension(), 2);
}

#[test]
fn identical_components_give_identical_outputs() {
    let base = SymmetricPositiveDefinite::new(3);
    let m = PowerManifold::new(base, vec![3]);
    let mut r = rng(53);
    let (p, x) = sample_pair(&base, &mut r);
    let pp = m
        .from_components(&[p.clone(), p.clone(), p.clone()])
        .unwrap();
    let xx = m
        .from_components(&[x.clone(), x.clone(), x.clone()])
        .unwrap();
    let q = m.exp(&pp, &xx).unwrap();
    let single = base.exp(&p, &x).unwrap();
    for i in 0..3 {
        assert_eq!(m.component(&q, i), single);
    }
    let qq = m
        .from_components(&[single.clone(), single.clone(), single])
        .unwrap();
    let a = base.distance(&p, &m.component(&q, 0));
    assert!((m.distance(&pp, &qq) - a * 3f64.sqrt()).abs() < 1e-12 * (1.0 + a));
}

#[test]
fn perturbing_one_cell_only_changes_that_cell_of_log() {
    let m = spd3_power();
    let i3 = DMatrix::<f64>::identity(3, 3);
    let p = m.from_components(&vec![i3.clone(); 4]).unwrap();
    let mut q = p.clone();
    let bumped = dmatrix![2.0, 0.1, 0.0; 0.1, 1.0, 0.0; 0.0, 0.0, 1.0];
    m.set_component(&mut q, 2, &bumped);
    let x = m.log(&p, &q).unwrap();
    for i in 0..4 {
        let zero = m.component(&x, i).amax() == 0.0;
        assert_eq!(zero, i != 2, "cell {i}");
    }
}

#[test]
fn single_nonzero_component_distance() {
    let m = PowerManifold::new(Euclidean::new(1), vec![5]);
    let p = m.allocate();
    let mut q = p.clone();
    q[(0, 3)] = 3.0;
    assert_eq!(m.distance(&p, &q), 3.0);
}

#[test]
fn failing_cell_is_reported() {
    let m = PowerManifold::new(Sphere::new(2), vec![3]);
    let e = dmatrix![1.0; 0.0; 0.0];
    let p = m
        .from_components(&[e.clone(), e.clone(), e.clone()])
        .unwrap();
    let q = m.from_components(&[e.clone(), -&e, e.clone()]).unwrap();
    match m.log(&p, &q) {
        Err(ManifoldError::Component { index, source }) => {
            assert_eq!(index, 1);
            assert!(matches!(*source, ManifoldError::LogUndefined(_)));
        }
        other => panic!("unexpected {other:?}"),
    }
    let mut bad = p.clone();
    bad[(0, 2)] = 2.0;
    match m.check_point(&bad, 1e-8) {
        Err(e @ ManifoldError::Component { index: 2, .. }) => assert!(e.is_validation()),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn product_operations_are_factorwise() {
    let m = r2_s2();
    let r2 = Euclidean::new(2);
    let s2 = Sphere::new(2);
    let mut r = rng(54);
    for _ in 0..100 {
        let (p, x) = sample_pair(&m, &mut r);
        let q = m.exp(&p, &x).unwrap();
        assert_eq!(q.0[0], r2.exp(&p.0[0], &x.0[0]).unwrap());
        assert_eq!(q.0[1], s2.exp(&p.0[1], &x.0[1]).unwrap());
        let v = m.log(&p, &q).unwrap();
        assert_eq!(v.0[1], s2.log(&p.0[1], &q.0[1]).unwrap());
        let d = m.distance(&p, &q);
        let d2 = r2.distance(&p.0[0], &q.0[0]).powi(2) + s2.distance(&p.0[1], &q.0[1]).powi(2);
        assert!((d * d - d2).abs() <= 1e-9 * d2.max(1e-300));
    }
}

#[test]
fn product_examples() {
    let m = r2_s2();
    let s = dmatrix![0.0; 1.0; 0.0];
    let p = ProductPoint(vec![dmatrix![1.0; 1.0], s.clone()]);
    let q = ProductPoint(vec![dmatrix![4.0; 5.0], s]);
    assert_eq!(m.distance(&p, &q), 5.0);

    let x = ProductPoint(vec![dmatrix![0.0; 0.0], dmatrix![1.0; 0.0; 2.0]]);
    let y = ProductPoint(vec![dmatrix![7.0; 7.0], dmatrix![3.0; 0.0; 1.0]]);
    assert_eq!(
        m.inner(&p, &x, &y),
        Sphere::new(2).inner(&p.0[1], &x.0[1], &y.0[1])
    );

    let single = ProductManifold::new(vec![Box::new(Sphere::new(2))]);
    let a = ProductPoint(vec![dmatrix![1.0; 0.0; 0.0]]);
    let b = ProductPoint(vec![dmatrix![0.0; 0.0; 1.0]]);
    assert_eq!(
        single.distance(&a, &b),
        Sphere::new(2).distance(&a.0[0], &b.0[0])
    );
    assert!(
        single
            .log(&a, &b)
            .unwrap()
            .max_abs_diff(&ProductPoint(vec![Sphere::new(2)
                .log(&a.0[0], &b.0[0])
                .unwrap()]))
            == 0.0
    );
}

#[test]
fn product_basis_is_orthonormal() {
    let m = r2_s2();
    let mut r = rng(55);
    let p = m.rand_point(&mut r);
    let basis = m.orthonormal_basis(&p).unwrap();
    assert_eq!(basis.len(), 4);
    for (i, u) in basis.vectors.iter().enumerate() {
        for (j, v) in basis.vectors.iter().enumerate() {
            let g = m.inner(&p, u, v);
            assert!((g - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
    let x = m.rand_tangent(&p, &mut r);
    let c = m.get_coordinates(&p, &x, &basis).unwrap();
    assert!(m.get_vector(&p, &c, &basis).unwrap().max_abs_diff(&x) < 1e-12);
}
