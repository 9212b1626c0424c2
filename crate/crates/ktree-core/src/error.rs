use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A clique or vertex index outside the current registry.
    #[error("index {index} out of range (valid: 0..{bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    /// A resource guard tripped before allocation.
    #[error("resource guard exceeded: {0}")]
    GuardExceeded(String),

    /// An iterative numeric method hit its iteration cap.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Two spectral roots are too close to separate reliably.
    #[error("root collision: {0}")]
    RootCollision(String),

    /// A tree representation failed structural validation.
    #[error("malformed tree representation: {0}")]
    MalformedTree(String),

    /// The requested quantity has no supported evaluation path.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
