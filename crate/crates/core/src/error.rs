use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("entry {0} is not an element of {1}")]
    InvalidEntry(String, String),
    #[error("denominator is not contained in numerator")]
    NotASubmodule,
    #[error("vector is not in the submodule")]
    NotAMember,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("invalid Gysin datum: {0}")]
    InvalidGysin(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
