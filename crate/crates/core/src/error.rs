use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("cycle is not a boundary in the given complex")]
    NotABoundary,

    #[error("no integral filling exists in the given complex")]
    NoIntegralFilling,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("jung enclosure failed: width {width} exceeds resolution {resolution} (best triangle {best:?})")]
    EnclosureFailure {
        width: f64,
        resolution: f64,
        best: [[f64; 2]; 3],
    },

    #[error("jung value {0} lies outside [1, 4/3]")]
    JungClampViolation(f64),

    #[error("loop check failed: {0}")]
    LoopCheck(String),

    #[error("mesh too coarse: {0}")]
    MeshTooCoarse(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
