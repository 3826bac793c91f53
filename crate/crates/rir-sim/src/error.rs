use thiserror::Error;

#[derive(Debug, Error)]
pub enum RirError {
    /// Invalid room geometry or simulation parameters.
    #[error("invalid room config: {0}")]
    Config(String),
    /// The requested reflection order would enumerate too many images.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, RirError>;
