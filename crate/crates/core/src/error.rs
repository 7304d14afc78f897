use thiserror::Error;

use crate::series::Domain;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("time series is empty")]
    EmptySeries,
    #[error("circular time series needs at least 2 samples, got {0}")]
    CircleTooShort(usize),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("invalid critical series: {0}")]
    InvalidCritical(String),
    #[error("domain mismatch: {0:?} vs {1:?}")]
    DomainMismatch(Domain, Domain),
    #[error("operation requires a {expected:?} series, got {found:?}")]
    WrongDomain { expected: Domain, found: Domain },
    #[error("rotation offset {offset} out of range for length {len}")]
    RotationOutOfRange { offset: usize, len: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("critical series lengths {0} and {1} differ by an odd number")]
    OddLengthDifference(usize, usize),
    #[error("input of size {size} exceeds oracle limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("no relevant items for query")]
    NoRelevantItems,
    #[error("metric failed on pair ({i}, {j}): {source}")]
    Metric {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
