use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid edge pair ({0}, {1}): edges must be distinct")]
    InvalidPair(u8, u8),

    #[error("invalid edge id {0}: expected 0..=4")]
    InvalidEdge(u8),

    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid Clifford targets: {0}")]
    InvalidTargets(String),

    #[error("{what} exceeds the size cap: {got} > {cap}")]
    SizeCap { what: &'static str, got: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("input is not in the instance set S: {0}")]
    NotInInstanceSet(String),

    #[error("bound undefined: {0}")]
    BoundUndefined(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
