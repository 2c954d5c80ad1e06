use thiserror::Error;

use crate::GroupParams;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },

    #[error("generator `{name}` has index {index}, but the rank is {rank}")]
    GeneratorOutOfRange { name: String, index: usize, rank: usize },

    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("parameter mismatch: {left} vs {right}")]
    ParamsMismatch { left: GroupParams, right: GroupParams },

    #[error("weight {weight} outside the admissible range {min}..={max}")]
    WeightOutOfRange { weight: usize, min: usize, max: usize },

    #[error("element is not in layer {weight}: offending coordinate {coordinate}")]
    NotInLayer { weight: usize, coordinate: String },

    #[error("invalid basic commutator {0:?}")]
    InvalidBasic(Vec<usize>),

    #[error("endomorphism is not an IA-automorphism (generator {generator})")]
    NotIa { generator: usize },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("operation needs nilpotency class at most {max}, got {class}")]
    ClassTooLarge { class: usize, max: usize },

    #[error("operation needs rank at least {min}, got {rank}")]
    RankTooSmall { rank: usize, min: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid delta function: {0}")]
    InvalidDelta(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
