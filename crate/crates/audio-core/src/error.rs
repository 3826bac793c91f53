use std::io;
use thiserror::Error;

/// Errors produced by the audio plumbing layer.
#[derive(Debug, Error)]
pub enum AudioError {
    /// Malformed container or corrupt payload.
    #[error("malformed audio file: {0}")]
    Format(String),
    /// Container is fine but the encoding is not one we read.
    #[error("unsupported encoding: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    /// Invalid processing configuration (bad FFT size, hop, band layout...).
    #[error("invalid config: {0}")]
    Config(String),
    /// Two signals that must share a sample rate do not.
    #[error("sample rate mismatch: {left} Hz vs {right} Hz")]
    RateMismatch { left: u32, right: u32 },
}

pub type Result<T> = std::result::Result<T, AudioError>;
