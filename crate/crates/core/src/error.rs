use thiserror::Error as ThisError;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("gcd({a}, {m}) != 1")]
    NotCoprime { a: i64, m: u64 },
    #[error("integer overflow")]
    Overflow,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("not a Weil polynomial: {clause}")]
    WeilRejected { clause: String },
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("invalid zeta notation: {0}")]
    InvalidNotation(String),
    #[error("inconsistent field data: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn weil(clause: impl Into<String>) -> Self {
        Error::WeilRejected { clause: clause.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
