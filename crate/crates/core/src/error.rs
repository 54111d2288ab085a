use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty probability vector")]
    Empty,

    #[error("negative entry at index {idx}: {value}")]
    NegativeEntry { idx: usize, value: f64 },

    #[error("non-finite entry at index {idx}: {value}")]
    NonFinite { idx: usize, value: f64 },

    #[error("entries sum to {sum}, expected 1")]
    SumNotOne { sum: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("eps = {0} is out of range")]
    EpsOutOfRange(f64),

    #[error("function undefined at {at}: {what}")]
    DomainError { what: String, at: f64 },

    #[error("derivative diverges on the simplex boundary: {0}")]
    BoundaryError(String),

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("wrong entropy class: expected {expected}, family `{family}` is {actual}")]
    WrongClass {
        expected: &'static str,
        actual: String,
        family: String,
    },

    #[error("exact enumeration limited to {limit} outcomes, got {m}")]
    TooLarge { m: usize, limit: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NotConverged(usize),

    #[error("bad temperature: {0}")]
    BadTemperature(String),

    #[error("bad JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
