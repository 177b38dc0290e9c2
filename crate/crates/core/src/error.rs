use thiserror::Error;

use crate::symcore::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("linear part must be (-y, x): {0}")]
    NotCanonicalCenter(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("F0 does not vanish: F0 = ({numerator})/({denominator})")]
    F0Nonzero { numerator: String, denominator: String },

    #[error("denominator of dr/dtheta has an eps^0 part beyond r")]
    DenominatorNotUnit,

    #[error("structural bound violated at order {order}: {detail}")]
    StructuralViolation { order: usize, detail: String },

    #[error("cannot solve for {param}: {reason}")]
    NotLinearlySolvable { param: String, reason: String },

    #[error("substitution for {0} is cyclic")]
    CyclicSubstitution(String),

    #[error("sign of coefficient {0} is not determined")]
    IndeterminateSign(String),

    #[error("bell: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("stage {stage} is outside 1..={order}")]
    BadStage { stage: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, EngineError>;
