use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph not connected")]
    Disconnected,
    #[error("edge {0}: length must be > 0")]
    NonPositiveLength(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("path is not simple")]
    NonSimplePath,
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid barcode: {0}")]
    InvalidBarcode(String),
    #[error("correspondence does not cover {0}")]
    NotCovering(&'static str),
    #[error("{what} too large: {size} > {cap}{hint}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("smoothed graph was not built from this graph")]
    ProvenanceMismatch,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
