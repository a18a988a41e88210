use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring order {order} exceeds the cap of {cap} elements")]
    OrderCap { order: u128, cap: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("ideals live in different ambient rings")]
    AmbientMismatch,

    #[error("{operation} is not supported for descriptor {descriptor}")]
    Unsupported { operation: &'static str, descriptor: String },

    #[error("invalid closed-set family: {0}")]
    InvalidSpace(String),

    /// The rule engine and the exhaustive computation disagree. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
