use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("work cap exceeded: {0}")]
    WorkCapExceeded(String),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("degree overflow: result degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("polynomial is not of the form g(x^m) with m >= 2")]
    NoPowerStructure,
    #[error("empty tail: {0}")]
    EmptyTail(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("tolerance ambiguity: two sums at distance {distance:e} with tol {tol:e}")]
    ToleranceAmbiguity { distance: f64, tol: f64 },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
