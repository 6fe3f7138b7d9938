use alloc::string::String;

use super::Var;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("negative exponent on non-invertible variable {0}")]
    NotInvertible(Var),
    #[error("invertible variable {0} assigned the value zero")]
    ZeroInvertible(Var),
    #[error("no value assigned to variable {0}")]
    Unassigned(Var),
    #[error("cannot invert {0}: not a monomial in invertible variables")]
    NoInverse(String),
    #[error("dimension mismatch: {lhs:?} vs {rhs:?}")]
    Dimension {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
