use thiserror::Error;

/// Errors raised by the forecasting core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("evaluation failed at origin {origin}: {source}")]
    Evaluation {
        origin: usize,
        #[source]
        source: Box<ThetaError>,
    },

    #[error("invalid input: {0}")]
    Input(String),
}

impl ThetaError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ThetaError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, ThetaError>;
