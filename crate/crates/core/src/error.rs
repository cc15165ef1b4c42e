use thiserror::Error;

/// Errors raised by manifold operations.
///
/// Geometric undefinedness (no unique geodesic, unsupported method) and
/// validation failures are distinct variants so callers can recover from the
/// former while treating the latter as a programming error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ManifoldError {
    #[error("logarithmic map undefined: {0}")]
    LogUndefined(String),

    #[error("parallel transport undefined: {0}")]
    TransportUndefined(String),

    #[error("inverse retraction undefined: {0}")]
    InverseRetractionUndefined(String),

    #[error("projection onto the manifold undefined: {0}")]
    ProjectionUndefined(String),

    #[error("{method} is not supported on {manifold}")]
    UnsupportedMethod { manifold: String, method: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("component {index}: {source}")]
    Component {
        index: usize,
        #[source]
        source: Box<ManifoldError>,
    },

    #[error("no convergence after {iterations} iterations (gradient norm {gradient_norm:e})")]
    MaxIterationsExceeded {
        iterations: usize,
        gradient_norm: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl ManifoldError {
    pub(crate) fn component(index: usize, source: ManifoldError) -> Self {
        ManifoldError::Component {
            index,
            source: Box::new(source),
        }
    }

    pub(crate) fn unsupported(manifold: impl Into<String>, method: impl std::fmt::Debug) -> Self {
        ManifoldError::UnsupportedMethod {
            manifold: manifold.into(),
            method: format!("{method:?}"),
        }
    }

    pub(crate) fn shape(expected: impl std::fmt::Display, actual: impl std::fmt::Display) -> Self {
        ManifoldError::ShapeMismatch {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    /// True for validation failures, including those nested in a component error.
    pub fn is_validation(&self) -> bool {
        match self {
            ManifoldError::Validation(_) => true,
            ManifoldError::Component { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

pub type Result<T, E = ManifoldError> = std::result::Result<T, E>;
