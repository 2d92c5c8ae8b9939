use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("objective {objective} expects a {expected} state")]
    DomainMismatch {
        objective: &'static str,
        expected: &'static str,
    },

    #[error("state is not binary at coordinate {index} (value {value})")]
    NonBinary { index: usize, value: f64 },

    #[error("local search precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large for the exact oracle: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("solution kind does not match the requested check")]
    KindMismatch,

    #[error("graph has no edges after removing isolated vertices")]
    EmptyGraph,
}
