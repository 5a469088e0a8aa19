use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("non-unit: {0} is not invertible in {1}")]
    NonUnit(String, String),
    #[error("parse error at position {pos} in {input:?}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("operation needs a finite group")]
    InfiniteGroup,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degree underflow: chain degree {chain} < cochain degree {cochain}")]
    DegreeUnderflow { chain: usize, cochain: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operation requires the integers, got {0}")]
    NotIntegers(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), pos, msg: msg.into() }
}
