use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("moduli {first} (index {i}) and {second} (index {j}) are not coprime")]
    NonCoprimeModuli {
        i: usize,
        j: usize,
        first: String,
        second: String,
    },
    #[error("not a knot polynomial: {0}")]
    NotKnotPolynomial(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("outside the valid regime: {0}")]
    OutOfRegime(String),
    #[error("record {record}: {field}: {reason}")]
    Load {
        record: String,
        field: String,
        reason: String,
    },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
