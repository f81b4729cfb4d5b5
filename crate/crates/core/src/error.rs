use thiserror::Error;

/// Errors produced by the constructions and checkers in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range for a structure on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("relation is not a C-relation: {0}")]
    NotCRelation(String),

    #[error("relation is not a D-relation: {0}")]
    NotDRelation(String),

    #[error("malformed tree specification: {0}")]
    TreeSpec(String),

    #[error("family {family} cannot be built on carrier: {reason}")]
    CarrierMismatch { family: String, reason: String },

    #[error("group closure exceeded the element budget of {0}")]
    BudgetExceeded(usize),

    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap { what: &'static str, size: usize, cap: usize },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("could not place {n} circle points with denominator {denominator} in {attempts} attempts")]
    CirclePlacement { n: usize, denominator: i64, attempts: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
