use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Dimensions of a point, datum, or system do not agree.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("partition {partition} does not fit in a {rows}x{cols} box")]
    BoxOverflow {
        partition: String,
        rows: usize,
        cols: usize,
    },
    #[error("invalid Horn datum: {0}")]
    Datum(String),
    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("cone is not pointed: lineality space has dimension {0}")]
    Lineality(usize),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
