use thiserror::Error;

/// Errors raised by the engine. Cross-check failures indicate a bug in one of
/// two independent computations and are never expected on valid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidDynkin(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Weyl group of {dynkin} has order {order}, exceeding the enumeration cap {cap}")]
    EnumerationCap { dynkin: String, order: u128, cap: u128 },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("not a permutation of the vertex set: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("roots do not form a simple system: {0}")]
    NotASimpleSystem(String),

    #[error("simple system is not compatible with the Coxeter element (length {length}, rank {rank})")]
    NotCompatible { length: usize, rank: usize },

    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("invalid height function: {0}")]
    InvalidHeightFunction(String),

    #[error("cross-check `{check}` failed: {detail}")]
    CrossCheck { check: &'static str, detail: String },

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("wraparound inconsistency for row {row}: {detail}")]
    Wraparound { row: String, detail: String },

    #[error("window radius {radius} is too small (need at least {needed})")]
    WindowTooSmall { radius: i64, needed: i64 },

    #[error("negative dimension vector at {vertex}: {entries:?}")]
    NegativeDimension { vertex: String, entries: Vec<i64> },

    #[error("matrix is singular")]
    Singular,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cross_check(check: &'static str, detail: impl Into<String>) -> Error {
    Error::CrossCheck {
        check,
        detail: detail.into(),
    }
}
