use thiserror::Error;

use crate::bicomplex::Bicomplex;
use crate::grid::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BicomplexError {
    #[error("{value} lies on the null cone and has no inverse")]
    NullCone { value: Bicomplex },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn syntax(offset: usize, message: impl Into<String>) -> Self {
        ParseError::SyntaxError {
            offset,
            message: message.into(),
        }
    }

    pub fn offset(&self) -> usize {
        match self {
            ParseError::SyntaxError { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("denominator {value} is a zero divisor at {point}")]
    SingularPoint { value: Bicomplex, point: Point },
    #[error("non-finite value at {point}")]
    NonFinite { point: Point },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("axis {axis}: {message}")]
    BadAxis { axis: char, message: String },
    #[error("malformed grid spec: {0}")]
    Malformed(String),
    #[error("grid has no active axis")]
    NoActiveAxis,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairError {
    #[error("degenerate generating pair at {point}: nondegeneracy measure {measure:e}")]
    DegeneratePair { point: Point, measure: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchrodingerError {
    #[error("f0 nearly vanishes at {point}: |f0| = {value:e}")]
    VanishingF0 { point: Point, value: f64 },
    #[error("expression is not C(i1)-valued at {point}: leak {leak:e}")]
    NotComplexValued { point: Point, leak: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Pair(#[from] PairError),
}
