/// How a manifold sits inside its ambient array space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingInfo {
    pub ambient_shape: Vec<usize>,
    /// When true, `inner(p, X, Y)` equals the ambient Euclidean inner
    /// product of `X` and `Y`.
    pub isometric: bool,
}

/// Manifolds stored as subsets of an ambient array space.
///
/// Points and tangent vectors are kept in ambient coordinates, so embedding
/// is the identity on storage; [`crate::Manifold::project_point`] and
/// [`crate::Manifold::project_tangent`] map back from the ambient space.
pub trait Embedded: crate::Manifold {
    fn embedding_info(&self) -> EmbeddingInfo;
}
