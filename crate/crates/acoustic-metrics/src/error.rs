use thiserror::Error;

/// Which RIR of a predicted/reference pair an analysis error came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Predicted,
    Reference,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Predicted => write!(f, "predicted"),
            Side::Reference => write!(f, "reference"),
        }
    }
}

#[derive(Debug, Error)]
pub enum MetricsError {
    /// Zero-energy or otherwise unanalyzable RIR.
    #[error("degenerate rir: {0}")]
    Degenerate(String),
    /// The decay curve never reaches the level the estimator needs.
    #[error("insufficient decay: {0}")]
    InsufficientDecay(String),
    /// A blind estimator found nothing to estimate from.
    #[error("estimation failed: {0}")]
    Estimation(String),
    /// Input is silent.
    #[error("silent input: {0}")]
    Silence(String),
    #[error("invalid config: {0}")]
    Config(String),
    /// Analysis of one side of a predicted/reference pair failed.
    #[error("{side} rir failed analysis: {source}")]
    SideFailed {
        side: Side,
        #[source]
        source: Box<MetricsError>,
    },
    #[error(transparent)]
    Audio(#[from] audio_core::AudioError),
}

pub type Result<T> = std::result::Result<T, MetricsError>;
