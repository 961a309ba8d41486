use thiserror::Error;

/// Errors raised by group construction, subgroup operators and verifiers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{what} needs {needed} elements but the configured bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u64,
        bound: u64,
    },

    #[error("group order does not fit in 64 bits")]
    OrderOverflow,

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error("{0} is not normal in the ambient group")]
    NotNormal(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownGroup(String),

    #[error("catalog data corrupted: {0}")]
    DataCorruption(String),
}

impl GroupError {
    /// True for errors caused by a configured size bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, GroupError::BoundExceeded { .. } | GroupError::OrderOverflow)
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
