use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::RngCore;

use crate::array::ManifoldArray;
use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::embedding::{Embedded, EmbeddingInfo};
use crate::error::{ManifoldError, Result};
use crate::linalg::sinc;
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod};
use crate::random::gaussian_matrix;

/// Points farther apart than `π - ANTIPODAL_MARGIN` are treated as antipodal.
pub const ANTIPODAL_MARGIN: f64 = 1e-8;

/// The unit sphere `S^n ⊂ R^{n+1}` with the round metric. Points and
/// tangent vectors are `(n+1)×1` columns; tangents at `p` satisfy `<p, X> = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sphere {
    n: usize,
}

impl Sphere {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "sphere dimension must be at least 1");
        Self { n }
    }

    fn ambient(&self) -> usize {
        self.n + 1
    }

    fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.shape() != (self.ambient(), 1) {
            return Err(ManifoldError::shape(
                format!("{}×1", self.ambient()),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }

    fn antipodal(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> bool {
        self.distance(p, q) > PI - ANTIPODAL_MARGIN
    }
}

fn dot(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.ambient_dot(b)
}

impl Manifold for Sphere {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor::new(ManifoldKind::Sphere, vec![self.n], MetricTag::Round)
    }

    fn manifold_dimension(&self) -> usize {
        self.n
    }

    fn injectivity_radius(&self) -> f64 {
        PI
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.ambient(), 1)
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(p)?;
        let norm = p.ambient_norm();
        if !((norm - 1.0).abs() <= tol) {
            return Err(ManifoldError::Validation(format!(
                "sphere point has norm {norm}, expected 1"
            )));
        }
        Ok(())
    }

    fn check_tangent(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_shape(x)?;
        let residual = dot(p, x);
        if !(residual.abs() <= tol) {
            return Err(ManifoldError::Validation(format!(
                "tangent vector has <p, X> = {residual:e}"
            )));
        }
        Ok(())
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(x)?;
        let theta = x.ambient_norm();
        let (c, s) = (theta.cos(), sinc(theta));
        q.clone_from(p);
        for (qi, xi) in q.iter_mut().zip(x.iter()) {
            *qi = c * *qi + s * xi;
        }
        Ok(())
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        self.check_shape(p)?;
        self.check_shape(q)?;
        let theta = self.distance(p, q);
        if theta > PI - ANTIPODAL_MARGIN {
            return Err(ManifoldError::LogUndefined(
                "antipodal points are joined by infinitely many shortest geodesics".into(),
            ));
        }
        let c = dot(p, q).clamp(-1.0, 1.0);
        x.clone_from(q);
        x.add_scaled(-c, p);
        let u = x.ambient_norm();
        if u > 0.0 {
            x.scale_mut(theta / u);
        }
        Ok(())
    }

    fn retract_mut(
        &self,
        q: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        method: RetractionMethod,
    ) -> Result<()> {
        match method {
            RetractionMethod::Exponential => self.exp_mut(q, p, x),
            RetractionMethod::Projection => {
                self.check_shape(p)?;
                self.check_shape(x)?;
                let sum = p + x;
                self.project_point_mut(q, &sum)
            }
        }
    }

    fn inverse_retract_mut(
        &self,
        x: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        match method {
            InverseRetractionMethod::Logarithmic => self.log_mut(x, p, q),
            InverseRetractionMethod::Projection => {
                self.check_shape(p)?;
                self.check_shape(q)?;
                let c = dot(p, q);
                if c <= f64::EPSILON {
                    return Err(ManifoldError::InverseRetractionUndefined(
                        "q is not in the open hemisphere centred at p".into(),
                    ));
                }
                x.clone_from(q);
                x.scale_mut(1.0 / c);
                *x -= p;
                Ok(())
            }
        }
    }

    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        let c = dot(p, q);
        if c.abs() < 0.9 {
            return c.clamp(-1.0, 1.0).acos();
        }
        // arccos loses precision near ±1; use the chord length instead.
        let sign = if c > 0.0 { -1.0 } else { 1.0 };
        let chord = p
            .iter()
            .zip(q.iter())
            .map(|(a, b)| {
                let d = a + sign * b;
                d * d
            })
            .sum::<f64>()
            .sqrt();
        let half = 2.0 * (0.5 * chord).min(1.0).asin();
        if c > 0.0 {
            half
        } else {
            PI - half
        }
    }

    fn inner(&self, _p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        dot(x, y)
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
        if self.antipodal(p, q) {
            return Err(ManifoldError::TransportUndefined(
                "antipodal points have no unique connecting geodesic".into(),
            ));
        }
        let factor = dot(q, x) / (1.0 + dot(p, q));
        out.clone_from(x);
        for ((o, pi), qi) in out.iter_mut().zip(p.iter()).zip(q.iter()) {
            *o -= factor * (pi + qi);
        }
        Ok(())
    }

    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.check_shape(a)?;
        let norm = a.ambient_norm();
        if !(norm > f64::MIN_POSITIVE && norm.is_finite()) {
            return Err(ManifoldError::ProjectionUndefined(
                "cannot normalize a zero vector".into(),
            ));
        }
        out.clone_from(a);
        out.scale_mut(1.0 / norm);
        Ok(())
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) {
        let c = dot(p, a);
        out.clone_from(a);
        out.add_scaled(-c, p);
    }

    /// Gram–Schmidt of the canonical ambient basis against `p`, skipping
    /// the canonical vector most aligned with `p`.
    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let skip = (0..self.ambient())
            .max_by(|&i, &j| p[i].abs().total_cmp(&p[j].abs()))
            .unwrap_or(0);
        let mut vectors: Vec<DMatrix<f64>> = Vec::with_capacity(self.n);
        for k in (0..self.ambient()).filter(|&k| k != skip) {
            let mut v = self.allocate();
            v[k] = 1.0;
            // Two passes of classical Gram–Schmidt.
            for _ in 0..2 {
                let c = dot(p, &v);
                v.add_scaled(-c, p);
                for b in &vectors {
                    let c = dot(b, &v);
                    v.add_scaled(-c, b);
                }
            }
            let norm = v.ambient_norm();
            v.scale_mut(1.0 / norm);
            vectors.push(v);
        }
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        loop {
            let g = gaussian_matrix(self.ambient(), 1, rng);
            if let Ok(p) = self.project_point(&g) {
                return p;
            }
        }
    }

    fn rand_tangent(&self, p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let g = gaussian_matrix(self.ambient(), 1, rng);
        self.project_tangent(p, &g)
    }
}

impl Embedded for Sphere {
    fn embedding_info(&self) -> EmbeddingInfo {
        EmbeddingInfo {
            ambient_shape: vec![self.ambient()],
            isometric: true,
        }
    }
}
