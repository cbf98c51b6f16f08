//! Error type shared by every module of the engine.

use thiserror::Error;

use crate::qring::ParseExprError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HzError {
    #[error("cannot parse braid word: {0}")]
    BraidParse(String),

    #[error("letter {letter} is out of range for {strands} strands")]
    InvalidLetter { letter: i32, strands: usize },

    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("at least {min} strands are required, got {got}")]
    TooFewStrands { min: usize, got: usize },

    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram {diagram} is not supported on {strands} strands")]
    UnsupportedDiagram { strands: usize, diagram: String },

    #[error("{strands} strands are not supported by {what}")]
    UnsupportedStrands { strands: usize, what: &'static str },

    #[error("trace has a nonzero radical component: {0}")]
    RadicalResidue(String),

    #[error("expected a diagonal matrix: {0}")]
    NotDiagonal(String),

    #[error("the closure has {0} components but a knot is required")]
    NotAKnot(usize),

    #[error("no decomposition found; residual {residual}")]
    DecompositionNotFound { residual: String },

    #[error("denominator exponents repeat: {0:?}")]
    RepeatedBeta(Vec<i64>),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("index {n} is below the seed range of series {series}")]
    BelowSeedRange { series: char, n: i64 },

    #[error("expression: {0}")]
    Expr(#[from] ParseExprError),
}

pub type Result<T> = std::result::Result<T, HzError>;
