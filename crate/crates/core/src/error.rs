use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable `{0}` has no parity outside an identity context")]
    UndefinedParity(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("binding for `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("theory mismatch: expected {expected}, found {found}")]
    TheoryMismatch { expected: String, found: String },
    #[error("permutation is not a shuffle of the two blocks")]
    NotAShuffle,
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("not multilinearizable: {0}")]
    NotMultilinearizable(String),
    #[error("not a derivation: {0}")]
    NotADerivation(String),
    #[error("not supercommutative: {0}")]
    NotSupercommutative(String),
    #[error("not anticommutative: {0}")]
    NotAnticommutative(String),
    #[error("odd generators are not supported here")]
    OddUnsupported,
    #[error("variable `{0}` is not designated")]
    NotDesignated(String),
    #[error("x-height of `{0}` is at least 3")]
    HeightTooLarge(String),
    #[error("reduction reached zero: {0}")]
    Degenerate(String),
    #[error("reduction did not decrease its termination measure: {0}")]
    NoProgress(String),
    #[error("not enough fresh variables: need {need}, got {got}")]
    NotEnoughFresh { need: usize, got: usize },
    #[error("degree {degree} exceeds limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
