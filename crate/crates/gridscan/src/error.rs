//! Crate-wide error type.

/// Errors produced by the identification pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A domain object was constructed from invalid parameters.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    /// Series or matrix dimensions do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// A synthetic grid could not be realized as a stable state space.
    #[error("grid construction failed: {0}")]
    Construction(String),
    /// The local least-squares problem has fewer rows than unknowns.
    #[error("under-determined local model: {0}")]
    UnderDetermined(String),
    /// A linear system that must be solvable is singular.
    #[error("singular system: {0}")]
    Singular(String),
    /// Configuration file or field is invalid.
    #[error("config error: {0}")]
    Config(String),
    /// A required input file or directory is absent.
    #[error("missing input: {0}")]
    MissingInput(String),
    /// Inputs are individually valid but mutually incompatible.
    #[error("incompatible data: {0}")]
    Incompatible(String),
    /// Text input (CSV/JSON) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
