//! Exact arithmetic substrate: rationals, sparse multivariate Laurent
//! polynomials and dense polynomial matrices.

mod error;
mod matrix;
mod parse;
mod poly;
mod rational;
mod var;

pub use error::AlgebraError;
pub use matrix::PolyMatrix;
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use var::{Symbol, Var};
