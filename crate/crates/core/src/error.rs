use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: x = {x} outside {interval}")]
    Domain {
        what: String,
        x: String,
        interval: String,
    },

    #[error("series `{left}` and `{right}` live on different intervals")]
    IntervalMismatch { left: String, right: String },

    #[error("polynomials have different anchors")]
    AnchorMismatch,

    #[error(
        "`{0}` has no finite limit at its far endpoint; second approximations are unavailable"
    )]
    NoEndpoint(String),

    #[error("coefficient {index} of `{name}` requested, but only {valid} terms are available")]
    Truncated {
        name: String,
        index: usize,
        valid: usize,
    },

    #[error("`{name}`: coefficient {index} contradicts the declared sign pattern ({detail})")]
    Inconsistent {
        name: String,
        index: usize,
        detail: String,
    },

    #[error("degree {degree} must exceed the largest negative-coefficient index {index}")]
    DegreeTooSmall { degree: usize, index: usize },

    #[error("`{name}` has sign pattern {pattern}; {hint}")]
    Unsupported {
        name: String,
        pattern: String,
        hint: String,
    },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
