//! Power manifolds `M^{n_1 × … × n_k}`: a grid of points of one base manifold.
//!
//! A point is stored as one contiguous `DMatrix` with one column per grid
//! cell. Each column holds the base element in the base manifold's own
//! column-major layout, so the base shape varies fastest and grid indices
//! slowest (first grid index fastest among those).

use nalgebra::DMatrix;
use rand::RngCore;

use crate::basis::Basis;
use crate::descriptor::{ManifoldDescriptor, ManifoldKind, MetricTag};
use crate::error::{ManifoldError, Result};
use crate::manifold::{InverseRetractionMethod, Manifold, RetractionMethod};

#[derive(Debug, Clone)]
pub struct PowerManifold<M> {
    base: M,
    grid: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl<M: Manifold<Point = DMatrix<f64>>> PowerManifold<M> {
    pub fn new(base: M, grid: Vec<usize>) -> Self {
        assert!(
            !grid.is_empty() && grid.iter().all(|&g| g > 0),
            "grid extents must be positive"
        );
        let (rows, cols) = base.allocate().shape();
        Self {
            base,
            grid,
            rows,
            cols,
        }
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn cells(&self) -> usize {
        self.grid.iter().product()
    }

    /// Number of scalars in one base element.
    pub fn element_len(&self) -> usize {
        self.rows * self.cols
    }

    /// Column index of a multi-index, first grid index fastest.
    pub fn linear_index(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.grid.len(), "index rank mismatch");
        let mut linear = 0;
        for (i, (&k, &n)) in index.iter().zip(&self.grid).enumerate().rev() {
            assert!(k < n, "index {k} out of range {n} in grid axis {i}");
            linear = linear * n + k;
        }
        linear
    }

    /// Copy of component `i` in the base manifold's layout.
    pub fn component(&self, p: &DMatrix<f64>, i: usize) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.rows, self.cols, p.column(i).as_slice())
    }

    /// Overwrites component `i` of `p` with `value`.
    pub fn set_component(&self, p: &mut DMatrix<f64>, i: usize, value: &DMatrix<f64>) {
        p.column_mut(i).copy_from_slice(value.as_slice());
    }

    /// Assembles a power point from base points in column order.
    pub fn from_components(&self, components: &[DMatrix<f64>]) -> Result<DMatrix<f64>> {
        if components.len() != self.cells() {
            return Err(ManifoldError::shape(
                format!("{} components", self.cells()),
                format!("{} components", components.len()),
            ));
        }
        let mut p = self.allocate();
        for (i, c) in components.iter().enumerate() {
            if c.shape() != (self.rows, self.cols) {
                return Err(ManifoldError::component(
                    i,
                    ManifoldError::shape(
                        format!("{}×{}", self.rows, self.cols),
                        format!("{}×{}", c.nrows(), c.ncols()),
                    ),
                ));
            }
            self.set_component(&mut p, i, c);
        }
        Ok(p)
    }

    fn check_shape(&self, a: &DMatrix<f64>) -> Result<()> {
        let expected = (self.element_len(), self.cells());
        if a.shape() != expected {
            return Err(ManifoldError::shape(
                format!("{}×{}", expected.0, expected.1),
                format!("{}×{}", a.nrows(), a.ncols()),
            ));
        }
        Ok(())
    }

    /// Applies a base operation to every cell, stopping at the first failing
    /// cell. `out` may be partially written on error.
    fn cellwise<const K: usize>(
        &self,
        out: &mut DMatrix<f64>,
        inputs: [&DMatrix<f64>; K],
        mut op: impl FnMut(&mut DMatrix<f64>, &[DMatrix<f64>; K]) -> Result<()>,
    ) -> Result<()> {
        for a in inputs {
            self.check_shape(a)?;
        }
        if out.shape() != (self.element_len(), self.cells()) {
            *out = self.allocate();
        }
        let mut scratch: [DMatrix<f64>; K] = std::array::from_fn(|_| self.base.allocate());
        let mut oi = self.base.allocate();
        for i in 0..self.cells() {
            for (s, a) in scratch.iter_mut().zip(inputs) {
                s.copy_from_slice(a.column(i).as_slice());
            }
            op(&mut oi, &scratch).map_err(|e| ManifoldError::component(i, e))?;
            self.set_component(out, i, &oi);
        }
        Ok(())
    }

    /// Sum of a scalar base quantity over all cells; NaN on shape mismatch.
    fn sum_cells<const K: usize>(
        &self,
        inputs: [&DMatrix<f64>; K],
        f: impl Fn(&[DMatrix<f64>; K]) -> f64,
    ) -> f64 {
        if inputs.iter().any(|a| self.check_shape(a).is_err()) {
            return f64::NAN;
        }
        let mut scratch: [DMatrix<f64>; K] = std::array::from_fn(|_| self.base.allocate());
        let mut total = 0.0;
        for i in 0..self.cells() {
            for (s, a) in scratch.iter_mut().zip(inputs) {
                s.copy_from_slice(a.column(i).as_slice());
            }
            total += f(&scratch);
        }
        total
    }

    /// Runs a base check on every cell.
    fn check_cells<const K: usize>(
        &self,
        inputs: [&DMatrix<f64>; K],
        f: impl Fn(&[DMatrix<f64>; K]) -> Result<()>,
    ) -> Result<()> {
        for a in inputs {
            self.check_shape(a)?;
        }
        let mut scratch: [DMatrix<f64>; K] = std::array::from_fn(|_| self.base.allocate());
        for i in 0..self.cells() {
            for (s, a) in scratch.iter_mut().zip(inputs) {
                s.copy_from_slice(a.column(i).as_slice());
            }
            f(&scratch).map_err(|e| ManifoldError::component(i, e))?;
        }
        Ok(())
    }
}

impl<M: Manifold<Point = DMatrix<f64>>> Manifold for PowerManifold<M> {
    type Point = DMatrix<f64>;

    fn descriptor(&self) -> ManifoldDescriptor {
        ManifoldDescriptor::new(
            ManifoldKind::Power(Box::new(self.base.descriptor())),
            self.grid.clone(),
            MetricTag::ProductL2,
        )
    }

    fn manifold_dimension(&self) -> usize {
        self.base.manifold_dimension() * self.cells()
    }

    fn injectivity_radius(&self) -> f64 {
        self.base.injectivity_radius()
    }

    fn allocate(&self) -> DMatrix<f64> {
        DMatrix::zeros(self.element_len(), self.cells())
    }

    fn check_point(&self, p: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_cells([p], |[pi]| self.base.check_point(pi, tol))
    }

    fn check_tangent(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, tol: f64) -> Result<()> {
        self.check_cells([p, x], |[pi, xi]| self.base.check_tangent(pi, xi, tol))
    }

    fn exp_mut(&self, q: &mut DMatrix<f64>, p: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<()> {
        self.cellwise(q, [p, x], |o, [a, b]| self.base.exp_mut(o, a, b))
    }

    fn log_mut(&self, x: &mut DMatrix<f64>, p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<()> {
        self.cellwise(x, [p, q], |o, [a, b]| self.base.log_mut(o, a, b))
    }

    fn retract_mut(
        &self,
        q: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        x: &DMatrix<f64>,
        method: RetractionMethod,
    ) -> Result<()> {
        self.cellwise(q, [p, x], |o, [a, b]| {
            self.base.retract_mut(o, a, b, method)
        })
    }

    fn inverse_retract_mut(
        &self,
        x: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        method: InverseRetractionMethod,
    ) -> Result<()> {
        self.cellwise(x, [p, q], |o, [a, b]| {
            self.base.inverse_retract_mut(o, a, b, method)
        })
    }

    /// `ℓ²` combination of the cell distances.
    fn distance(&self, p: &DMatrix<f64>, q: &DMatrix<f64>) -> f64 {
        self.sum_cells([p, q], |[a, b]| self.base.distance(a, b).powi(2))
            .sqrt()
    }

    fn inner(&self, p: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        self.sum_cells([p, x, y], |[a, b, c]| self.base.inner(a, b, c))
    }

    fn parallel_transport_mut(
        &self,
        out: &mut DMatrix<f64>,
        p: &DMatrix<f64>,
        q: &DMatrix<f64>,
        x: &DMatrix<f64>,
    ) -> Result<()> {
        self.cellwise(out, [p, q, x], |o, [a, b, c]| {
            self.base.parallel_transport_mut(o, a, b, c)
        })
    }

    fn project_point_mut(&self, out: &mut DMatrix<f64>, a: &DMatrix<f64>) -> Result<()> {
        self.cellwise(out, [a], |o, [ai]| self.base.project_point_mut(o, ai))
    }

    fn project_tangent_mut(&self, out: &mut DMatrix<f64>, p: &DMatrix<f64>, a: &DMatrix<f64>) {
        let _ = self.cellwise(out, [p, a], |o, [pi, ai]| {
            self.base.project_tangent_mut(o, pi, ai);
            Ok(())
        });
    }

    /// Base basis vectors of each cell in turn, zero elsewhere.
    fn orthonormal_basis(&self, p: &DMatrix<f64>) -> Result<Basis<DMatrix<f64>>> {
        self.check_shape(p)?;
        let mut vectors = Vec::with_capacity(self.manifold_dimension());
        for i in 0..self.cells() {
            let basis = self
                .base
                .orthonormal_basis(&self.component(p, i))
                .map_err(|e| ManifoldError::component(i, e))?;
            for v in basis.vectors {
                let mut e = self.allocate();
                self.set_component(&mut e, i, &v);
                vectors.push(e);
            }
        }
        Ok(Basis::new(p.clone(), vectors))
    }

    fn rand_point(&self, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let mut p = self.allocate();
        for i in 0..self.cells() {
            let c = self.base.rand_point(rng);
            self.set_component(&mut p, i, &c);
        }
        p
    }

    fn rand_tangent(&self, p: &DMatrix<f64>, rng: &mut dyn RngCore) -> DMatrix<f64> {
        let mut x = self.allocate();
        for i in 0..self.cells() {
            let c = self.base.rand_tangent(&self.component(p, i), rng);
            self.set_component(&mut x, i, &c);
        }
        x
    }
}
