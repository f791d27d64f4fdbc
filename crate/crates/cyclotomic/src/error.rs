use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operands belong to different cyclotomic contexts")]
    ContextMismatch,
    #[error("the zero ideal is not allowed")]
    ZeroIdeal,
    #[error("the unit ideal has a trivial quotient")]
    UnitIdeal,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
