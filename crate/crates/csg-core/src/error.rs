use alloc::string::String;

/// Errors raised by constructors and operations of this crate. Verification
/// results (axiom violations, formula mismatches) are reports, not errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty domain is not an object of the simplex category")]
    EmptyDomain,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group order {order} at level {level} is not invertible in F_{p}")]
    NonInvertibleOrder { level: usize, order: usize, p: u64 },
    #[error("differential does not descend to coinvariants at degree {degree}")]
    DescentFailure { degree: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
