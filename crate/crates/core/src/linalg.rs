//! Dense matrix kernels: functions of symmetric matrices through the
//! symmetric eigendecomposition, rotation exponentials and logarithms.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{ManifoldError, Result};

/// Smallest eigenvalue accepted by [`sym_log`].
pub const SPD_EIGENVALUE_FLOOR: f64 = 1e-12;

/// `(a + a^T) / 2`
pub fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut s = a.clone();
    symmetrize_mut(&mut s);
    s
}

pub fn symmetrize_mut(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
}

/// `(a - a^T) / 2`
pub fn skew_part(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a - a.transpose()) * 0.5
}

/// Eigendecomposition of the symmetric part of `a`.
pub fn sym_eigen(a: &DMatrix<f64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    SymmetricEigen::new(symmetrize(a))
}

/// `V diag(f(λ)) V^T` for the eigendecomposition `V diag(λ) V^T`.
pub fn spectral_apply(
    eig: &SymmetricEigen<f64, nalgebra::Dyn>,
    f: impl Fn(f64) -> f64,
) -> DMatrix<f64> {
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, lambda) in eig.eigenvalues.iter().enumerate() {
        let fl = f(*lambda);
        for i in 0..scaled.nrows() {
            scaled[(i, j)] *= fl;
        }
    }
    let mut out = scaled * v.transpose();
    symmetrize_mut(&mut out);
    out
}

/// Matrix exponential of a symmetric matrix.
pub fn sym_exp(a: &DMatrix<f64>) -> DMatrix<f64> {
    spectral_apply(&sym_eigen(a), f64::exp)
}

/// Principal matrix logarithm of a symmetric positive definite matrix.
pub fn sym_log(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = sym_eigen(a);
    check_floor(&eig.eigenvalues)?;
    Ok(spectral_apply(&eig, f64::ln))
}

/// `(a^{1/2}, a^{-1/2})` of a symmetric positive definite matrix.
pub fn sym_sqrt_and_inv_sqrt(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = sym_eigen(a);
    check_floor(&eig.eigenvalues)?;
    Ok((
        spectral_apply(&eig, f64::sqrt),
        spectral_apply(&eig, |l| 1.0 / l.sqrt()),
    ))
}

fn check_floor(eigenvalues: &DVector<f64>) -> Result<()> {
    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min >= SPD_EIGENVALUE_FLOOR) {
        return Err(ManifoldError::Numerical(format!(
            "smallest eigenvalue {min:e} is below {SPD_EIGENVALUE_FLOOR:e}"
        )));
    }
    Ok(())
}

/// Lower Cholesky factor of an SPD matrix.
pub fn cholesky_lower(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    nalgebra::Cholesky::new(a.clone())
        .map(|c| c.l())
        .ok_or_else(|| ManifoldError::Numerical("Cholesky factorization failed".into()))
}

/// `l^{-1} a l^{-T}` for lower-triangular `l`.
pub fn whiten(l: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let left = l
        .solve_lower_triangular(a)
        .expect("Cholesky factor has a positive diagonal");
    let mut w = l
        .solve_lower_triangular(&left.transpose())
        .expect("Cholesky factor has a positive diagonal");
    symmetrize_mut(&mut w);
    w
}

/// `l a l^T`
pub fn unwhiten(l: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = l * a * l.transpose();
    symmetrize_mut(&mut out);
    out
}

/// `θ / sin θ`, accurate near zero.
pub(crate) fn theta_over_sin(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        1.0 + theta * theta / 6.0
    } else {
        theta / theta.sin()
    }
}

/// `sin θ / θ`, accurate near zero.
pub(crate) fn sinc(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        1.0 - theta * theta / 6.0
    } else {
        theta.sin() / theta
    }
}

/// `(1 - cos θ) / θ²`, accurate near zero.
fn one_minus_cos_over_sq(theta: f64) -> f64 {
    if theta.abs() < 1e-4 {
        0.5 - theta * theta / 24.0
    } else {
        let h = (0.5 * theta).sin();
        2.0 * h * h / (theta * theta)
    }
}

/// Axis vector `(w_x, w_y, w_z)` of a 3×3 skew-symmetric matrix.
pub fn vee3(s: &DMatrix<f64>) -> [f64; 3] {
    [
        0.5 * (s[(2, 1)] - s[(1, 2)]),
        0.5 * (s[(0, 2)] - s[(2, 0)]),
        0.5 * (s[(1, 0)] - s[(0, 1)]),
    ]
}

/// Skew-symmetric matrix of an axis vector.
pub fn hat3(w: [f64; 3]) -> DMatrix<f64> {
    DMatrix::from_row_slice(
        3,
        3,
        &[0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0],
    )
}

/// Rodrigues' formula: exponential of a 3×3 skew-symmetric matrix.
pub fn so3_exp(skew: &DMatrix<f64>) -> DMatrix<f64> {
    let w = vee3(skew);
    let theta = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    let k = hat3(w);
    let k2 = &k * &k;
    DMatrix::identity(3, 3) + k * sinc(theta) + k2 * one_minus_cos_over_sq(theta)
}

/// Rotation angle in `[0, π]` of a 3×3 rotation matrix.
pub fn so3_angle(r: &DMatrix<f64>) -> f64 {
    let v = vee3(r);
    let s = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let c = 0.5 * (r[(0, 0)] + r[(1, 1)] + r[(2, 2)] - 1.0);
    s.atan2(c)
}

/// Principal logarithm of a 3×3 rotation with angle below `max_angle`.
pub fn so3_log(r: &DMatrix<f64>, max_angle: f64) -> Result<DMatrix<f64>> {
    let theta = so3_angle(r);
    if theta > max_angle {
        return Err(ManifoldError::LogUndefined(format!(
            "rotation angle {theta} is too close to π"
        )));
    }
    Ok(skew_part(r) * theta_over_sin(theta))
}

/// Exponential of a skew-symmetric matrix of any size through its real
/// Schur form, which is block diagonal with 2×2 blocks `[[0, -θ], [θ, 0]]`.
pub fn skew_exp_schur(skew: &DMatrix<f64>) -> DMatrix<f64> {
    let n = skew.nrows();
    let (q, t) = nalgebra::Schur::new(skew.clone()).unpack();
    let mut e = DMatrix::<f64>::identity(n, n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > 1e-14 * (1.0 + t.norm()) {
            let theta = 0.5 * (t[(i + 1, i)] - t[(i, i + 1)]);
            let (s, c) = theta.sin_cos();
            e[(i, i)] = c;
            e[(i, i + 1)] = -s;
            e[(i + 1, i)] = s;
            e[(i + 1, i + 1)] = c;
            i += 2;
        } else {
            i += 1;
        }
    }
    &q * e * q.transpose()
}

/// Principal logarithm of a rotation matrix of any size through its real
/// Schur form. Fails when an eigenvalue is within `max_angle` of `-1`.
pub fn rotation_log_schur(r: &DMatrix<f64>, max_angle: f64) -> Result<DMatrix<f64>> {
    let n = r.nrows();
    let (q, t) = nalgebra::Schur::new(r.clone()).unpack();
    let mut l = DMatrix::<f64>::zeros(n, n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > 1e-14 {
            let s = 0.5 * (t[(i + 1, i)] - t[(i, i + 1)]);
            let c = 0.5 * (t[(i, i)] + t[(i + 1, i + 1)]);
            let theta = s.atan2(c);
            if theta.abs() > max_angle {
                return Err(ManifoldError::LogUndefined(format!(
                    "rotation angle {theta} is too close to π"
                )));
            }
            l[(i, i + 1)] = -theta;
            l[(i + 1, i)] = theta;
            i += 2;
        } else {
            if t[(i, i)] < 0.0 {
                return Err(ManifoldError::LogUndefined(
                    "rotation has eigenvalue -1".into(),
                ));
            }
            i += 1;
        }
    }
    Ok(skew_part(&(&q * l * q.transpose())))
}

/// Squared Frobenius norm of the principal logarithm of a rotation matrix,
/// `2 Σ θ_k²` over its rotation planes, through the real Schur form.
pub fn rotation_log_norm_sq_schur(r: &DMatrix<f64>) -> f64 {
    let n = r.nrows();
    let t = nalgebra::Schur::new(r.clone()).unpack().1;
    let mut total = 0.0;
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > 1e-14 {
            let s = 0.5 * (t[(i + 1, i)] - t[(i, i + 1)]);
            let c = 0.5 * (t[(i, i)] + t[(i + 1, i + 1)]);
            total += 2.0 * s.atan2(c).powi(2);
            i += 2;
        } else {
            // Real eigenvalues -1 come in pairs for det = +1; each pair is a
            // half turn contributing 2π².
            if t[(i, i)] < 0.0 {
                total += std::f64::consts::PI.powi(2);
            }
            i += 1;
        }
    }
    total
}

/// Nearest special orthogonal matrix in Frobenius norm.
pub fn polar_rotation(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let svd = nalgebra::SVD::new(a.clone(), true, true);
    let mut u = svd
        .u
        .ok_or_else(|| ManifoldError::Numerical("SVD did not produce U".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| ManifoldError::Numerical("SVD did not produce V^T".into()))?;
    if (&u * &v_t).determinant() < 0.0 {
        let (k, _) =
            svd.singular_values
                .iter()
                .enumerate()
                .fold(
                    (0, f64::INFINITY),
                    |acc, (i, s)| if *s < acc.1 { (i, *s) } else { acc },
                );
        u.column_mut(k).neg_mut();
    }
    Ok(u * v_t)
}
