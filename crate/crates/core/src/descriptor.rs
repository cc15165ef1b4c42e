//! Value-level identification of a manifold.

use std::fmt;

/// Point representation used by the hyperbolic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperbolicRepresentation {
    /// Upper sheet of the two-sheeted hyperboloid in Minkowski space `R^{n,1}`.
    Hyperboloid,
    /// Open unit ball in `R^n`.
    PoincareBall,
    /// Upper half space `{x in R^n : x_n > 0}`.
    PoincareHalfSpace,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ManifoldKind {
    Euclidean,
    Sphere,
    Hyperbolic(HyperbolicRepresentation),
    SymmetricPositiveDefinite,
    Rotations,
    Power(Box<ManifoldDescriptor>),
    Product(Vec<ManifoldDescriptor>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricTag {
    Euclidean,
    /// Round metric induced by the ambient space on the sphere.
    Round,
    /// Metric induced by the Minkowski form (hyperboloid and its isometric models).
    Minkowski,
    /// Affine-invariant metric `tr(p^-1 X p^-1 Y)` on SPD matrices.
    LinearAffine,
    /// Frobenius inner product of ambient tangent matrices.
    Frobenius,
    /// Sum of the factor metrics (power and product manifolds).
    ProductL2,
    /// Another metric multiplied by a positive constant.
    Scaled(f64),
}

/// Immutable description of a manifold: its family, shape parameters and
/// metric. Two descriptors with equal fields describe the same manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldDescriptor {
    pub kind: ManifoldKind,
    /// Family-specific shape: `(n)` or `(n, m)` for Euclidean, `(n)` for the
    /// sphere, hyperbolic space, SPD and rotations, the grid for power manifolds.
    pub shape: Vec<usize>,
    pub metric: MetricTag,
}

impl ManifoldDescriptor {
    pub fn new(kind: ManifoldKind, shape: Vec<usize>, metric: MetricTag) -> Self {
        Self {
            kind,
            shape,
            metric,
        }
    }

    /// Intrinsic dimension, a pure function of `kind` and `shape`.
    pub fn manifold_dimension(&self) -> usize {
        let prod: usize = self.shape.iter().product();
        let n = self.shape.first().copied().unwrap_or(0);
        match &self.kind {
            ManifoldKind::Euclidean => prod,
            ManifoldKind::Sphere | ManifoldKind::Hyperbolic(_) => n,
            ManifoldKind::SymmetricPositiveDefinite => n * (n + 1) / 2,
            ManifoldKind::Rotations => n * n.saturating_sub(1) / 2,
            ManifoldKind::Power(base) => base.manifold_dimension() * prod,
            ManifoldKind::Product(factors) => factors
                .iter()
                .map(ManifoldDescriptor::manifold_dimension)
                .sum(),
        }
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self
            .shape
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        match &self.kind {
            ManifoldKind::Euclidean => write!(f, "Euclidean({dims})"),
            ManifoldKind::Sphere => write!(f, "Sphere({dims})"),
            ManifoldKind::Hyperbolic(rep) => write!(f, "Hyperbolic({dims}, {rep:?})"),
            ManifoldKind::SymmetricPositiveDefinite => {
                write!(f, "SymmetricPositiveDefinite({dims})")
            }
            ManifoldKind::Rotations => write!(f, "Rotations({dims})"),
            ManifoldKind::Power(base) => write!(f, "Power({base}, {dims})"),
            ManifoldKind::Product(factors) => {
                let names = factors.iter().map(|d| d.to_string()).collect::<Vec<_>>();
                write!(f, "Product({})", names.join(", "))
            }
        }?;
        if let MetricTag::Scaled(c) = self.metric {
            write!(f, " scaled by {c}")?;
        }
        Ok(())
    }
}
