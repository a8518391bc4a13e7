use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings ({0})")]
    RingMismatch(String),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("variable `{0}` is not declared")]
    UndeclaredVariable(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid monomial order: {0}")]
    BadOrder(String),
    #[error("invalid number field: {0}")]
    BadNumberField(String),
    #[error("slope ({0}, {1}) is not primitive")]
    NonPrimitiveSlope(i64, i64),
    #[error("base function is constant on the curve")]
    ConstantBase,
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
    #[error("{0} exceeds the trial-division bound for primality testing")]
    PrimeTooLarge(BigInt),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing job section `{0}`")]
    MissingSection(String),
    #[error("verification failed at stage {stage}: {detail}")]
    Verification { stage: String, detail: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn verification(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            stage: stage.into(),
            detail: detail.into(),
        }
    }
}
