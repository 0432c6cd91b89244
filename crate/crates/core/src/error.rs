use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-normalizable denominator")]
    NonNormalizableDenominator,
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
    #[error("pole at M = {m}: factor {factor} vanishes")]
    Pole { m: i64, factor: String },
    #[error("singular system")]
    Singular,
    #[error("partition {0} has a part equal to 1")]
    PartEqualToOne(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
