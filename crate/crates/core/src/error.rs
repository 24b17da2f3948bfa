use thiserror::Error;

/// Errors raised by the clustering routines and point containers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coordinate} of point {point} is {value}, expected 0 or 1")]
    NonBinary {
        point: usize,
        coordinate: usize,
        value: f64,
    },

    #[error("coordinate {coordinate} of point {point} is not finite")]
    NonFinite { point: usize, coordinate: usize },

    #[error("point set must contain at least one point of dimension at least one")]
    EmptyPointSet,

    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("center set must not be empty")]
    EmptyCenters,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("metric mismatch: {0}")]
    MetricMismatch(String),

    #[error("clusters do not partition the point set: {0}")]
    NotAPartition(String),

    #[error("subroutine `{name}` returned an invalid solution: {reason}")]
    Subroutine { name: String, reason: String },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
