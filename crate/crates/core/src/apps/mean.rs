//! Weighted Riemannian center of mass and variance.
//!
//! The weighted Karcher cost is `F(q) = Σ w̃_k d²(q, p_k)` with normalized
//! weights `w̃_k = w_k / Σ w`, and its Riemannian gradient is
//! `grad F(q) = -2 Σ w̃_k log_q p_k`.

use crate::array::ManifoldArray;
use crate::error::{ManifoldError, Result};
use crate::manifold::{shortest_geodesic_mut, Manifold};

/// Stopping rule and Armijo line search constants for
/// [`riemannian_mean_gd`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanConfig {
    /// Stop once the gradient norm drops below this value.
    pub tol: f64,
    pub max_iterations: usize,
    pub initial_step: f64,
    /// Step contraction factor per backtracking trial.
    pub contraction: f64,
    /// Armijo sufficient-decrease constant.
    pub sufficient_decrease: f64,
    /// Backtracking trials per iteration before giving up.
    pub max_backtracks: usize,
    /// Extra unit steps taken after convergence while the gradient norm
    /// keeps shrinking.
    pub polish_steps: usize,
}

impl Default for MeanConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iterations: 200,
            initial_step: 1.0,
            contraction: 0.5,
            sufficient_decrease: 1e-4,
            max_backtracks: 60,
            polish_steps: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanResult<P> {
    pub mean: P,
    /// Gradient steps taken.
    pub iterations: usize,
    pub final_grad_norm: f64,
}

/// Weights divided by their sum; `None` means equal weights.
fn normalized_weights(n: usize, weights: Option<&[f64]>) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(ManifoldError::InvalidArgument("no data points".into()));
    }
    let Some(w) = weights else {
        return Ok(vec![1.0 / n as f64; n]);
    };
    if w.len() != n {
        return Err(ManifoldError::InvalidArgument(format!(
            "{} weights for {n} points",
            w.len()
        )));
    }
    if let Some(bad) = w.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(ManifoldError::InvalidArgument(format!(
            "weights must be finite and nonnegative, got {bad}"
        )));
    }
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        return Err(ManifoldError::InvalidArgument(
            "all weights are zero".into(),
        ));
    }
    Ok(w.iter().map(|v| v / total).collect())
}

/// Ratio between the descent direction and `-grad F`.
const DIRECTION_SCALE: f64 = 0.5;

fn cost<M: Manifold + ?Sized>(manifold: &M, q: &M::Point, points: &[M::Point], w: &[f64]) -> f64 {
    points
        .iter()
        .zip(w)
        .map(|(p, wk)| wk * manifold.distance(q, p).powi(2))
        .sum()
}

fn gradient_into<M: Manifold + ?Sized>(
    manifold: &M,
    grad: &mut M::Point,
    scratch: &mut M::Point,
    q: &M::Point,
    points: &[M::Point],
    w: &[f64],
) -> Result<()> {
    *grad = manifold.zero_vector(q);
    for (k, (p, wk)) in points.iter().zip(w).enumerate() {
        if *wk == 0.0 {
            continue;
        }
        manifold
            .log_mut(scratch, q, p)
            .map_err(|e| ManifoldError::component(k, e))?;
        grad.add_scaled(-2.0 * wk, scratch);
    }
    Ok(())
}

/// `F(q) = Σ w̃_k d²(q, p_k)`; equal weights when `weights` is `None`.
pub fn karcher_cost<M: Manifold + ?Sized>(
    manifold: &M,
    q: &M::Point,
    points: &[M::Point],
    weights: Option<&[f64]>,
) -> Result<f64> {
    let w = normalized_weights(points.len(), weights)?;
    Ok(cost(manifold, q, points, &w))
}

/// `grad F(q) = -2 Σ w̃_k log_q p_k`.
pub fn karcher_gradient<M: Manifold + ?Sized>(
    manifold: &M,
    q: &M::Point,
    points: &[M::Point],
    weights: Option<&[f64]>,
) -> Result<M::Point> {
    let w = normalized_weights(points.len(), weights)?;
    let mut grad = manifold.allocate();
    let mut scratch = manifold.allocate();
    gradient_into(manifold, &mut grad, &mut scratch, q, points, &w)?;
    Ok(grad)
}

/// Riemannian gradient descent on the Karcher cost, started at `points[0]`,
/// with Armijo backtracking along `d = Σ w̃_k log_q p_k = -½ grad F(q)`:
/// `q ← exp_q(η d)`.
///
/// A unit step along `d` lands on the mean in flat space. Once the predicted
/// decrease falls below the rounding error of `F`, a trial step is accepted
/// if `F` does not rise beyond that error.
///
/// Returns a stationary point (`‖grad F‖ < cfg.tol`); whether it is the
/// global minimizer depends on the data lying in a convex region.
pub fn riemannian_mean_gd<M: Manifold + ?Sized>(
    manifold: &M,
    points: &[M::Point],
    weights: Option<&[f64]>,
    cfg: &MeanConfig,
) -> Result<MeanResult<M::Point>> {
    let w = normalized_weights(points.len(), weights)?;
    let mut q = points[0].clone();
    let mut grad = manifold.allocate();
    let mut scratch = manifold.allocate();
    let mut candidate = manifold.allocate();
    let mut step_vector = manifold.allocate();
    let mut f = cost(manifold, &q, points, &w);

    for iteration in 0..=cfg.max_iterations {
        gradient_into(manifold, &mut grad, &mut scratch, &q, points, &w)?;
        let grad_norm = manifold.norm(&q, &grad);
        if grad_norm < cfg.tol {
            return polish(manifold, q, grad_norm, iteration, points, &w, cfg);
        }
        if iteration == cfg.max_iterations {
            return Err(ManifoldError::MaxIterationsExceeded {
                iterations: cfg.max_iterations,
                gradient_norm: grad_norm,
            });
        }

        let mut eta = cfg.initial_step;
        let mut accepted = false;
        for _ in 0..cfg.max_backtracks {
            step_vector.clone_from(&grad);
            step_vector.scale_mut(-DIRECTION_SCALE * eta);
            manifold.exp_mut(&mut candidate, &q, &step_vector)?;
            let f_candidate = cost(manifold, &candidate, points, &w);
            let decrease = DIRECTION_SCALE * eta * grad_norm * grad_norm;
            let noise = 8.0 * f64::EPSILON * f.abs();
            let sufficient = f_candidate <= f - cfg.sufficient_decrease * decrease;
            let within_noise =
                cfg.sufficient_decrease * decrease <= noise && f_candidate <= f + noise;
            if sufficient || within_noise {
                std::mem::swap(&mut q, &mut candidate);
                f = f_candidate;
                accepted = true;
                break;
            }
            eta *= cfg.contraction;
        }
        if !accepted {
            return Err(ManifoldError::Numerical(format!(
                "line search found no decrease at gradient norm {grad_norm:e}"
            )));
        }
    }
    unreachable!("the loop returns on its last iteration")
}

/// Unit steps from a converged iterate, kept only while they reduce the
/// gradient norm. Brings the result to rounding level so that it no longer
/// depends on where the descent started.
fn polish<M: Manifold + ?Sized>(
    manifold: &M,
    mut q: M::Point,
    mut grad_norm: f64,
    mut iterations: usize,
    points: &[M::Point],
    w: &[f64],
    cfg: &MeanConfig,
) -> Result<MeanResult<M::Point>> {
    let mut grad = manifold.allocate();
    let mut scratch = manifold.allocate();
    let mut candidate = manifold.allocate();
    let mut candidate_grad = manifold.allocate();
    gradient_into(manifold, &mut grad, &mut scratch, &q, points, w)?;
    for _ in 0..cfg.polish_steps {
        if grad_norm == 0.0 {
            break;
        }
        let mut step_vector = grad.clone();
        step_vector.scale_mut(-DIRECTION_SCALE);
        manifold.exp_mut(&mut candidate, &q, &step_vector)?;
        gradient_into(
            manifold,
            &mut candidate_grad,
            &mut scratch,
            &candidate,
            points,
            w,
        )?;
        let candidate_norm = manifold.norm(&candidate, &candidate_grad);
        if !(candidate_norm < grad_norm) {
            break;
        }
        std::mem::swap(&mut q, &mut candidate);
        std::mem::swap(&mut grad, &mut candidate_grad);
        grad_norm = candidate_norm;
        iterations += 1;
    }
    Ok(MeanResult {
        mean: q,
        iterations,
        final_grad_norm: grad_norm,
    })
}

/// Single pass of geodesic interpolation in input order:
/// `m_k = γ(w_k / W_k; m_{k-1}, p_k)` with running weight sum `W_k`.
///
/// Exact on Euclidean space; on curved spaces the result depends on the
/// order of the data.
pub fn riemannian_mean_interp<M: Manifold + ?Sized>(
    manifold: &M,
    points: &[M::Point],
    weights: Option<&[f64]>,
) -> Result<M::Point> {
    let w = normalized_weights(points.len(), weights)?;
    let mut m = points[0].clone();
    let mut next = manifold.allocate();
    let mut scratch = manifold.allocate();
    let mut total = w[0];
    for (k, (p, wk)) in points.iter().zip(&w).enumerate().skip(1) {
        if *wk == 0.0 {
            continue;
        }
        total += wk;
        let t = wk / total;
        shortest_geodesic_mut(manifold, &mut next, &mut scratch, &m, p, t)
            .map_err(|e| ManifoldError::component(k, e))?;
        std::mem::swap(&mut m, &mut next);
    }
    Ok(m)
}

/// Bias-corrected weighted variance about `mean`:
/// `Σ w_k d²(mean, p_k) / (W - Σ w_k² / W)` with `W = Σ w_k`, which is
/// `Σ d² / (N - 1)` for equal weights.
///
/// Fails when the effective sample size is below two.
pub fn riemannian_variance<M: Manifold + ?Sized>(
    manifold: &M,
    points: &[M::Point],
    weights: Option<&[f64]>,
    mean: &M::Point,
) -> Result<f64> {
    let w = normalized_weights(points.len(), weights)?;
    let sum_sq: f64 = w.iter().map(|v| v * v).sum();
    let denominator = 1.0 - sum_sq;
    if !(denominator > 0.0) {
        return Err(ManifoldError::InvalidArgument(
            "variance needs at least two points with positive weight".into(),
        ));
    }
    Ok(cost(manifold, mean, points, &w) / denominator)
}
