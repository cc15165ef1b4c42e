//! Closed-form values, each checked against an independent computation.

mod common;

use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2};

use common::rng;
use manifolds::linalg::hat3;
use manifolds::{
    Euclidean, Hyperbolic, HyperbolicRepresentation, Manifold, ManifoldArray, Rotations, Sphere,
    SymmetricPositiveDefinite,
};
use nalgebra::{dmatrix, DMatrix, DVector, SymmetricEigen};

fn diag(d: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(d))
}

/// `f(A)` for symmetric `A` through its eigendecomposition.
fn spectral(a: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(a.clone());
    let fl = DMatrix::from_diagonal(&eig.eigenvalues.map(f));
    &eig.eigenvectors * fl * eig.eigenvectors.transpose()
}

/// `exp(S)` for skew `S` from the symmetric matrix `M = [[0, -S], [S, 0]]`:
/// `exp(S) = cos(M)[top-left] + sin(M)[bottom-left]`.
fn skew_exp_oracle(s: &DMatrix<f64>) -> DMatrix<f64> {
    let n = s.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, n), (n, n)).copy_from(&(-s));
    m.view_mut((n, 0), (n, n)).copy_from(s);
    let c = spectral(&m, f64::cos);
    let sn = spectral(&m, f64::sin);
    c.view((0, 0), (n, n)) + sn.view((n, 0), (n, n))
}

/// Taylor series of the matrix exponential, summed to convergence.
fn exp_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..60 {
        term = &term * a / k as f64;
        sum += &term;
    }
    sum
}

#[test]
fn sphere_quarter_circle() {
    let m = Sphere::new(2);
    let d = m.distance(&dmatrix![1.0; 0.0; 0.0], &dmatrix![0.0; 1.0; 0.0]);
    assert!((d - FRAC_PI_2).abs() <= 1e-15);
    let p = dmatrix![0.0; 0.0; 1.0];
    assert_eq!(
        m.inner(&p, &dmatrix![1.0; 0.0; 0.0], &dmatrix![0.0; 1.0; 0.0]),
        0.0
    );
}

#[test]
fn euclidean_inner() {
    let m = Euclidean::new(3);
    let p = dmatrix![0.0; 0.0; 0.0];
    assert_eq!(
        m.inner(&p, &dmatrix![1.0; 2.0; 3.0], &dmatrix![1.0; 0.0; 0.0]),
        1.0
    );
}

#[test]
fn spd_values_match_eigendecomposition_oracle() {
    let m = SymmetricPositiveDefinite::new(3);
    let i = DMatrix::identity(3, 3);
    let e = diag(&[E, 1.0, 1.0]);
    assert!((m.distance(&i, &e) - 1.0).abs() < 1e-12);
    let q = m.exp(&i, &diag(&[1.0, 0.0, 0.0])).unwrap();
    assert!(q.max_abs_diff(&spectral(&diag(&[1.0, 0.0, 0.0]), f64::exp)) < 1e-12);
    assert!((m.inner(&i, &i, &i) - 3.0).abs() < 1e-15);

    // exp_p(X) = p^{1/2} mexp(p^{-1/2} X p^{-1/2}) p^{1/2} with every
    // matrix function taken spectrally.
    let mut r = rng(31);
    for _ in 0..50 {
        let p = m.rand_point(&mut r);
        let x = m.rand_tangent(&p, &mut r);
        let s = spectral(&p, f64::sqrt);
        let s_inv = spectral(&p, |l| 1.0 / l.sqrt());
        let inner = &s_inv * &x * &s_inv;
        let oracle = &s * spectral(&((&inner + inner.transpose()) * 0.5), f64::exp) * &s;
        let got = m.exp(&p, &x).unwrap();
        assert!(got.max_abs_diff(&oracle) < 1e-10 * oracle.amax());

        let q = m.rand_point(&mut r);
        let w = &s_inv * &q * &s_inv;
        let w = (&w + w.transpose()) * 0.5;
        let d_oracle = spectral(&w, f64::ln).norm();
        assert!((m.distance(&p, &q) - d_oracle).abs() < 1e-10);
    }
}

#[test]
fn so3_exp_matches_rodrigues_and_embedding_oracle() {
    let m = Rotations::new(3);
    let i = DMatrix::identity(3, 3);
    let x = hat3([0.0, 0.0, FRAC_PI_2]);
    let q = m.exp(&i, &x).unwrap();
    // Rodrigues with unit axis z and angle π/2: I + sin K + (1 - cos) K².
    let k = hat3([0.0, 0.0, 1.0]);
    let rodrigues = &i + &k * FRAC_PI_2.sin() + &k * &k * (1.0 - FRAC_PI_2.cos());
    assert!(q.max_abs_diff(&rodrigues) < 1e-12);
    assert!(q.max_abs_diff(&skew_exp_oracle(&x)) < 1e-12);
    assert!((m.distance(&i, &q) - SQRT_2 * FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn rotation_exp_matches_oracles_in_several_dimensions() {
    let mut r = rng(32);
    for n in [2usize, 3, 4, 5, 6] {
        let m = Rotations::new(n);
        for _ in 0..30 {
            let p = m.rand_point(&mut r);
            let x = common::tangent_with_norm(&m, &p, 2.0, &mut r);
            let omega = p.transpose() * &x;
            let oracle = &p * skew_exp_oracle(&omega);
            let series = &p * exp_series(&omega);
            let got = m.exp(&p, &x).unwrap();
            assert!(got.max_abs_diff(&oracle) < 1e-12, "n = {n}");
            assert!(got.max_abs_diff(&series) < 1e-12, "n = {n}");
        }
    }
}

#[test]
fn hyperboloid_unit_distance() {
    let m = Hyperbolic::new(2, HyperbolicRepresentation::Hyperboloid);
    let p = dmatrix![0.0; 0.0; 1.0];
    let q = dmatrix![0.0; 1f64.sinh(); 1f64.cosh()];
    assert!((m.distance(&p, &q) - 1.0).abs() < 1e-12);
}

#[test]
fn poincare_models_agree_on_distance_from_origin() {
    // d(0, x) = 2 artanh|x| in the ball; d(i, e^s i) = s in the half-plane.
    let ball = Hyperbolic::new(2, HyperbolicRepresentation::PoincareBall);
    let o = dmatrix![0.0; 0.0];
    let x = dmatrix![0.3; 0.4];
    assert!((ball.distance(&o, &x) - 2.0 * 0.5f64.atanh()).abs() < 1e-14);
    let half = Hyperbolic::new(2, HyperbolicRepresentation::PoincareHalfSpace);
    let a = dmatrix![0.0; 1.0];
    let b = dmatrix![0.0; 2f64.exp()];
    assert!((half.distance(&a, &b) - 2.0).abs() < 1e-14);
}

#[test]
fn sphere_antipodal_log_is_an_error_value() {
    let m = Sphere::new(2);
    let p = dmatrix![1.0; 0.0; 0.0];
    assert!(matches!(
        m.log(&p, &(-&p)),
        Err(manifolds::ManifoldError::LogUndefined(_))
    ));
    assert!((m.distance(&p, &(-&p)) - PI).abs() < 1e-15);
}

#[test]
fn spd_exp_identity_example() {
    let m = SymmetricPositiveDefinite::new(3);
    let q = m
        .exp(&DMatrix::identity(3, 3), &diag(&[1.0, 0.0, 0.0]))
        .unwrap();
    assert!(q.max_abs_diff(&diag(&[E, 1.0, 1.0])) < 1e-14);
    assert!(q.ambient_norm() > 0.0);
}
