//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lambda must be in (0, 4] (got {0})")]
    LambdaOutOfRange(f64),

    #[error("x0 must be strictly inside (0, 1) (got {0})")]
    X0OutOfRange(f64),

    #[error("sequence must contain at least one element")]
    EmptySequence,

    #[error("value must be in [0, 1] (got {0})")]
    ValueOutOfRange(f64),

    #[error("unknown raga {0:?}")]
    UnknownRaga(String),

    #[error("raga {0:?} is already registered")]
    DuplicateRaga(String),

    #[error("invalid raga definition: {0}")]
    InvalidRaga(String),

    #[error("illegal symbol {symbol:?} at position {position}")]
    IllegalSymbol { symbol: char, position: usize },

    #[error("level {level} out of range for raga {raga:?} ({n_levels} levels)")]
    LevelOutOfRange {
        level: usize,
        raga: String,
        n_levels: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("raga mismatch: {left:?} vs {right:?}")]
    RagaMismatch { left: String, right: String },

    #[error("{operand} operand has zero energy")]
    ZeroEnergy { operand: &'static str },

    #[error("graph needs at least 2 samples (got {0})")]
    TooShort(usize),

    #[error("notes file is missing its '# raga: <name>' header")]
    MissingRagaHeader,

    #[error("report field {0:?} is not finite")]
    NonFiniteReportField(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
