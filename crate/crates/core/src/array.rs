//! Minimal vector-space operations shared by every point and tangent
//! representation.

use nalgebra::DMatrix;
use std::fmt::Debug;

/// Dense storage for points and tangent vectors.
///
/// Tangent vectors use the same storage type as points, so the linear
/// operations here are what generic algorithms (gradient sums, basis
/// expansions) need to combine tangent vectors.
pub trait ManifoldArray: Clone + Debug + PartialEq + Send + Sync {
    fn fill_zero(&mut self);

    fn scale_mut(&mut self, a: f64);

    /// `self += a * x`
    fn add_scaled(&mut self, a: f64, x: &Self);

    /// Euclidean (Frobenius) inner product of the ambient storage.
    fn ambient_dot(&self, other: &Self) -> f64;

    /// Largest absolute entrywise difference; `f64::INFINITY` on shape mismatch.
    fn max_abs_diff(&self, other: &Self) -> f64;

    fn ambient_norm(&self) -> f64 {
        self.ambient_dot(self).sqrt()
    }

    fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.scale_mut(a);
        out
    }

    /// `self - other`
    fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(-1.0, other);
        out
    }

    fn is_finite(&self) -> bool;
}

impl ManifoldArray for DMatrix<f64> {
    fn fill_zero(&mut self) {
        self.fill(0.0);
    }

    fn scale_mut(&mut self, a: f64) {
        for v in self.iter_mut() {
            *v *= a;
        }
    }

    fn add_scaled(&mut self, a: f64, x: &Self) {
        debug_assert_eq!(self.shape(), x.shape());
        for (s, v) in self.iter_mut().zip(x.iter()) {
            *s += a * v;
        }
    }

    fn ambient_dot(&self, other: &Self) -> f64 {
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

/// A point (or tangent vector) of a product manifold: one array per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPoint(pub Vec<DMatrix<f64>>);

impl ProductPoint {
    pub fn factors(&self) -> &[DMatrix<f64>] {
        &self.0
    }
}

impl ManifoldArray for ProductPoint {
    fn fill_zero(&mut self) {
        self.0.iter_mut().for_each(ManifoldArray::fill_zero);
    }

    fn scale_mut(&mut self, a: f64) {
        self.0.iter_mut().for_each(|m| m.scale_mut(a));
    }

    fn add_scaled(&mut self, a: f64, x: &Self) {
        for (s, v) in self.0.iter_mut().zip(x.0.iter()) {
            s.add_scaled(a, v);
        }
    }

    fn ambient_dot(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.ambient_dot(b))
            .sum()
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.0.len() != other.0.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.0.iter().all(ManifoldArray::is_finite)
    }
}
