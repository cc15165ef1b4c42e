//! Hyperbolic space `H^n` in three point representations.
//!
//! The hyperboloid model is the computational core: Poincaré ball and
//! half-space points are mapped to the hyperboloid (tangent vectors through
//! the differential of that map), operated on there, and mapped back. The
//! Minkowski form has signature `(+, …, +, −)` with the last coordinate
//! timelike.

use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{HyperbolicRepresentation, ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::manifold::{Manifold, DEFAULT_TOLERANCE};
use crate::random::gaussian_matrix;

use HyperbolicRepresentation::{Hyperboloid, PoincareBall, PoincareHalfSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hyperbolic {
    n: usize,
    representation: HyperbolicRepresentation,
}

/// `Σ_{i<n} a_i b_i − a_n b_n`
pub fn minkowski_dot(a: &[f64], b: &[f64]) -> f64 {
    let last = a.len() - 1;
    a[..last]
        .iter()
        .zip(&b[..last])
        .map(|(x, y)| x * y)
        .sum::<f64>()
        - a[last] * b[last]
}

fn norm2(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum()
}

fn column(v: Vec<f64>) -> DMatrix<f64> {
    DMatrix::from_vec(v.len(), 1, v)
}

// --- hyperboloid closed forms -------------------------------------------------

fn hyperboloid_distance(p: &[f64], q: &[f64]) -> f64 {
    let c = -minkowski_dot(p, q);
    if c > 2.0 {
        c.acosh()
    } else {
        // The difference of two hyperboloid points is spacelike with
        // Minkowski norm 2 sinh(d / 2); this avoids arccosh's cancellation near 1.
        let diff: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
        let chord = minkowski_dot(&diff, &diff).max(0.0).sqrt();
        2.0 * (0.5 * chord).asinh()
    }
}

fn hyperboloid_exp(p: &[f64], x: &[f64]) -> Vec<f64> {
    let t = minkowski_dot(x, x).max(0.0).sqrt();
    let (c, s) = if t < 1e-4 {
        (1.0 + 0.5 * t * t, 1.0 + t * t / 6.0)
    } else {
        (t.cosh(), t.sinh() / t)
    };
    let mut q: Vec<f64> = p.iter().zip(x).map(|(a, b)| c * a + s * b).collect();
    renormalize(&mut q);
    q
}

/// Recomputes the timelike coordinate so the point lies on the hyperboloid.
fn renormalize(q: &mut [f64]) {
    let last = q.len() - 1;
    q[last] = (1.0 + norm2(&q[..last])).sqrt();
}

fn hyperboloid_log(p: &[f64], q: &[f64]) -> Vec<f64> {
    let d = hyperboloid_distance(p, q);
    let c = minkowski_dot(p, q);
    let mut u: Vec<f64> = q.iter().zip(p).map(|(a, b)| a + c * b).collect();
    let nu = minkowski_dot(&u, &u).max(0.0).sqrt();
    if nu > 0.0 {
        let f = d / nu;
        u.iter_mut().for_each(|v| *v *= f);
    } else {
        u.iter_mut().for_each(|v| *v = 0.0);
    }
    hyperboloid_project_tangent(p, &u)
}

fn hyperboloid_transport(p: &[f64], q: &[f64], x: &[f64]) -> Vec<f64> {
    let f = minkowski_dot(q, x) / (1.0 - minkowski_dot(p, q));
    x.iter()
        .zip(p.iter().zip(q))
        .map(|(xi, (pi, qi))| xi + f * (pi + qi))
        .collect()
}

fn hyperboloid_project_tangent(p: &[f64], a: &[f64]) -> Vec<f64> {
    let c = minkowski_dot(p, a);
    a.iter().zip(p).map(|(ai, pi)| ai + c * pi).collect()
}

// --- conversions --------------------------------------------------------------

fn hyperboloid_to_ball(x: &[f64]) -> Vec<f64> {
    let last = x.len() - 1;
    let s = 1.0 + x[last];
    x[..last].iter().map(|v| v / s).collect()
}

fn ball_to_hyperboloid(y: &[f64]) -> Vec<f64> {
    let r2 = norm2(y);
    let a = 1.0 - r2;
    let mut x: Vec<f64> = y.iter().map(|v| 2.0 * v / a).collect();
    x.push((1.0 + r2) / a);
    x
}

fn ball_to_half_space(y: &[f64]) -> Vec<f64> {
    let last = y.len() - 1;
    let den = norm2(&y[..last]) + (y[last] - 1.0).powi(2);
    let mut h: Vec<f64> = y[..last].iter().map(|v| 2.0 * v / den).collect();
    h.push((1.0 - norm2(y)) / den);
    h
}

fn half_space_to_ball(h: &[f64]) -> Vec<f64> {
    let last = h.len() - 1;
    let t = h[last];
    let xn = norm2(&h[..last]);
    let den = xn + (t + 1.0).powi(2);
    let mut y: Vec<f64> = h[..last].iter().map(|v| 2.0 * v / den).collect();
    y.push((xn + t * t - 1.0) / den);
    y
}

fn d_ball_to_hyperboloid(y: &[f64], v: &[f64]) -> Vec<f64> {
    let a = 1.0 - norm2(y);
    let s: f64 = y.iter().zip(v).map(|(a, b)| a * b).sum();
    let mut out: Vec<f64> = y
        .iter()
        .zip(v)
        .map(|(yi, vi)| 2.0 * vi / a + 4.0 * yi * s / (a * a))
        .collect();
    out.push(4.0 * s / (a * a));
    out
}

fn d_hyperboloid_to_ball(x: &[f64], v: &[f64]) -> Vec<f64> {
    let last = x.len() - 1;
    let s = 1.0 + x[last];
    x[..last]
        .iter()
        .zip(&v[..last])
        .map(|(xi, vi)| vi / s - xi * v[last] / (s * s))
        .collect()
}

fn d_ball_to_half_space(y: &[f64], v: &[f64]) -> Vec<f64> {
    let last = y.len() - 1;
    let den = norm2(&y[..last]) + (y[last] - 1.0).powi(2);
    let dden: f64 = 2.0
        * y[..last]
            .iter()
            .zip(&v[..last])
            .map(|(a, b)| a * b)
            .sum::<f64>()
        + 2.0 * (y[last] - 1.0) * v[last];
    let mut out: Vec<f64> = y[..last]
        .iter()
        .zip(&v[..last])
        .map(|(yi, vi)| 2.0 * vi / den - 2.0 * yi * dden / (den * den))
        .collect();
    let yv: f64 = y.iter().zip(v).map(|(a, b)| a * b).sum();
    out.push((-2.0 * yv * den - (1.0 - norm2(y)) * dden) / (den * den));
    out
}

fn d_half_space_to_ball(h: &[f64], v: &[f64]) -> Vec<f64> {
    let last = h.len() - 1;
    let t = h[last];
    let xn = norm2(&h[..last]);
    let den = xn + (t + 1.0).powi(2);
    let xv: f64 = h[..last].iter().zip(&v[..last]).map(|(a, b)| a * b).sum();
    let dden = 2.0 * xv + 2.0 * (t + 1.0) * v[last];
    let mut out: Vec<f64> = h[..last]
        .iter()
        .zip(&v[..last])
        .map(|(hi, vi)| 2.0 * vi / den - 2.0 * hi * dden / (den * den))
        .collect();
    out.push(((2.0 * xv + 2.0 * t * v[last]) * den - (xn + t * t - 1.0) * dden) / (den * den));
    out
}

fn point_to_hyperboloid(rep: HyperbolicRepresentation, p: &[f64]) -> Vec<f64> {
    match rep {
        Hyperboloid => p.to_vec(),
        PoincareBall => ball_to_hyperboloid(p),
        PoincareHalfSpace => ball_to_hyperboloid(&half_space_to_ball(p)),
    }
}

fn point_from_hyperboloid(rep: HyperbolicRepresentation, x: &[f64]) -> Vec<f64> {
    match rep {
        Hyperboloid => x.to_vec(),
        PoincareBall => hyperboloid_to_ball(x),
        PoincareHalfSpace => ball_to_half_space(&hyperboloid_to_ball(x)),
    }
}

fn tangent_to_hyperboloid(rep: HyperbolicRepresentation, p: &[f64], v: &[f64]) -> Vec<f64> {
    match rep {
        Hyperboloid => v.to_vec(),
        PoincareBall => d_ball_to_hyperboloid(p, v),
        PoincareHalfSpace => {
            let y = half_space_to_ball(p);
            d_ball_to_hyperboloid(&y, &d_half_space_to_ball(p, v))
        }
    }
}

/// Pulls a hyperboloid tangent at `x` back to `rep`.
fn tangent_from_hyperboloid(rep: HyperbolicRepresentation, x: &[f64], v: &[f64]) -> Vec<f64> {
    match rep {
        Hyperboloid => v.to_vec(),
        PoincareBall => d_hyperboloid_to_ball(x, v),
        PoincareHalfSpace => {
            let y = hyperboloid_to_ball(x);
            d_ball_to_half_space(&y, &d_hyperboloid_to_ball(x, v))
        }
    }
}

fn check_in_representation(
    rep: HyperbolicRepresentation,
    n: usize,
    p: &[f64],
    tol: f64,
) -> Result<()> {
    let expected = if rep == Hyperboloid { n + 1 } else { n };
    if p.len() != expected {
        return Err(ManifoldError::shape(expected, p.len()));
    }
    if !p.iter().all(|v| v.is_finite()) {
        return Err(ManifoldError::Validation("non-finite entries".into()));
    }
    match rep {
        Hyperboloid => {
            let residual = minkowski_dot(p, p) + 1.0;
            if !(residual.abs() <= tol) || p[n] <= 0.0 {
                return Err(ManifoldError::Validation(format!(
                    "hyperboloid point has <p, p> + 1 = {residual:e}, last coordinate {}",
                    p[n]
                )));
            }
        }
        PoincareBall => {
            let r2 = norm2(p);
            if !(r2 < 1.0) {
                return Err(ManifoldError::Validation(format!(
                    "Poincaré ball point has norm {} ≥ 1",
                    r2.sqrt()
                )));
            }
        }
        PoincareHalfSpace => {
            if !(p[n - 1] > 0.0) {
                return Err(ManifoldError::Validation(format!(
                    "half-space point has last coordinate {} ≤ 0",
                    p[n - 1]
                )));
            }
        }
    }
    Ok(())
}

/// Converts a point between representations of `H^n`. Distances are preserved.
pub fn convert_point(
    p: &DMatrix<f64>,
    from: HyperbolicRepresentation,
    to: HyperbolicRepresentation,
) -> Result<DMatrix<f64>> {
    let n = if from == Hyperboloid {
        p.len().saturating_sub(1)
    } else {
        p.len()
    };
    check_in_representation(from, n, p.as_slice(), DEFAULT_TOLERANCE)?;
    if from == to {
        return Ok(p.clone());
    }
    let x = point_to_hyperboloid(from, p.as_slice());
    Ok(column(point_from_hyperboloid(to, &x)))
}

/// Pushes a tangent vector at `p` forward to the tangent space at the
/// converted point.
pub fn convert_tangent(
    p: &DMatrix<f64>,
    x: &DMatrix<f64>,
    from: HyperbolicRepresentation,
    to: HyperbolicRepresentation,
) -> Result<DMatrix<f64>> {
    let n = if from == Hyperboloid {
        p.len().saturating_sub(1)
    } else {
        p.len()
    };
    check_in_representation(from, n, p.as_slice(), DEFAULT_TOLERANCE)?;
    if x.len() != p.len() {
        return Err(ManifoldError::shape(p.len(), x.len()));
    }
    let h = point_to_hyperboloid(from, p.as_slice());
    let v = tangent_to_hyperboloid(from, p.as_slice(), x.as_slice());
    Ok(column(tangent_from_hyperboloid(to, &h, &v)))
}

impl Hyperbolic {
    pub fn new(n: usize, representation: HyperbolicRepresentation) -> Self {
        assert!(n >= 1, "hyperbolic space dimension must be at least 1");
        Self { n, representation }
    }

    pub fn representation(&self) -> HyperbolicRepresentation {
        self.representation
    }

    /// The same space in another representation.
    pub fn with_representation(&self, representation: HyperbolicRepresentation) -> Self {
        Self::new(self.n, representation)
    }

    fn storage_len(&self) -> usize {
        match self.representation {
            Hyperboloid => self.n + 1,
            _ => self.n,
        }
    }

    fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.shape() != (self.storage_len(), 1) {
            return Err(ManifoldError::shape(
                format!("{}×1", self.storage_len()),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }

    /// Conformal factor of the metric at `p` relative to the Euclidean one
    /// (ball: `2 / (1 − |p|²)`, half space: `1 / p_n`).
    fn conformal_factor(&self, p: &[f64]) -> f64 {
        match self.representation {
            Hyperboloid => 1.0,
            PoincareBall => 2.0 / (1.0 - norm2(p)),
            PoincareHalfSpace => 1.0 / p[self.n - 1],
        }
    }
}

impl Manifold for Hyperbolic {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor::new(
            ManifoldKind::Hyperbolic(self.representation),
            vec![self.n],
            MetricTag::Minkowski,
        )
    }

    fn manifold_dimension(&self) -> usize {
        self.n
    }

    fn injectivity_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.storage_len(), 1)
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(p)?;
        check_in_representation(self.representation, self.n, p.as_slice(), tol)
    }

    fn check_tangent(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(x)?;
        if !x.is_finite() {
            return Err(ManifoldError::Validation("non-finite entries".into()));
        }
        if self.representation == Hyperboloid {
            let residual = minkowski_dot(p.as_slice(), x.as_slice());
            if !(residual.abs() <= tol) {
                return Err(ManifoldError::Validation(format!(
                    "tangent vector has <p, X>_L = {residual:e}"
                )));
            }
        }
        Ok(())
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(x)?;
        let rep = self.representation;
        let ph = point_to_hyperboloid(rep, p.as_slice());
        let xh = tangent_to_hyperboloid(rep, p.as_slice(), x.as_slice());
        *q = column(point_from_hyperboloid(rep, &hyperboloid_exp(&ph, &xh)));
        Ok(())
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        let rep = self.representation;
        let ph = point_to_hyperboloid(rep, p.as_slice());
        let qh = point_to_hyperboloid(rep, q.as_slice());
        let v = hyperboloid_log(&ph, &qh);
        *x = column(tangent_from_hyperboloid(rep, &ph, &v));
        Ok(())
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        let rep = self.representation;
        hyperboloid_distance(
            &point_to_hyperboloid(rep, p.as_slice()),
            &point_to_hyperboloid(rep, q.as_slice()),
        )
    }

    fn inner(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        match self.representation {
            Hyperboloid => minkowski_dot(x.as_slice(), y.as_slice()),
            _ => {
                let lambda = self.conformal_factor(p.as_slice());
                lambda * lambda * x.ambient_dot(y)
            }
        }
    }

    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        self.check_shape(x)?;
        let rep = self.representation;
        let ph = point_to_hyperboloid(rep, p.as_slice());
        let qh = point_to_hyperboloid(rep, q.as_slice());
        let xh = tangent_to_hyperboloid(rep, p.as_slice(), x.as_slice());
        let moved = hyperboloid_transport(&ph, &qh, &xh);
        *out = column(tangent_from_hyperboloid(rep, &qh, &moved));
        Ok(())
    }

    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.check_shape(a)?;
        match self.representation {
            Hyperboloid => {
                let mut v = a.as_slice().to_vec();
                renormalize(&mut v);
                *out = column(v);
                Ok(())
            }
            rep => {
                check_in_representation(rep, self.n, a.as_slice(), 0.0).map_err(|e| {
                    ManifoldError::ProjectionUndefined(format!("outside the model domain: {e}"))
                })?;
                out.clone_from(a);
                Ok(())
            }
        }
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) {
        match self.representation {
            Hyperboloid => *out = column(hyperboloid_project_tangent(p.as_slice(), a.as_slice())),
            _ => out.clone_from(a),
        }
    }

    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let vectors = match self.representation {
            Hyperboloid => {
                let ps = p.as_slice();
                let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(self.n);
                for k in 0..self.n {
                    let mut e = vec![0.0; self.n + 1];
                    e[k] = 1.0;
                    let mut v = hyperboloid_project_tangent(ps, &e);
                    for _ in 0..2 {
                        for b in &vectors {
                            let c = minkowski_dot(b, &v);
                            v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
                        }
                    }
                    let norm = minkowski_dot(&v, &v).sqrt();
                    v.iter_mut().for_each(|vi| *vi /= norm);
                    vectors.push(v);
                }
                vectors.into_iter().map(column).collect()
            }
            _ => {
                let scale = 1.0 / self.conformal_factor(p.as_slice());
                (0..self.n)
                    .map(|k| {
                        let mut e = self.allocate();
                        e[k] = scale;
                        e
                    })
                    .collect()
            }
        };
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let mut x = gaussian_matrix(self.n, 1, rng).as_slice().to_vec();
        x.push(0.0);
        renormalize(&mut x);
        column(point_from_hyperboloid(self.representation, &x))
    }

    fn rand_tangent(&self, p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let g = gaussian_matrix(self.storage_len(), 1, rng);
        self.project_tangent(p, &g)
    }
}

impl Embedded for Hyperbolic {
    fn embedding_info(&self) -> EmbeddingInfo {
        EmbeddingInfo {
            ambient_shape: vec![self.storage_len()],
            isometric: false,
        }
    }
}
