//! Exact algebra and numerics for the six-parameter family of Poisson–Lie
//! structures on the three-dimensional solvable "book" group.
//!
//! The crate is `no_std` (it needs `alloc`) so the algebra can be embedded
//! anywhere; file formats, the command line and reporting live in the
//! `booklie` companion crate.
//!
//! Layout:
//!
//! * [`exact`]: rationals, sparse Laurent polynomials and polynomial matrices.
//! * [`bracket`]: the bracket family `P[a,b,c,d,e,f]`, its Casimir, Jacobi
//!   residuals and linearization.
//! * [`hopf`]: the group coproduct, counit, antipode and the Poisson-map check.
//! * [`rmatrix`]: structure constants, Schouten bracket, Sklyanin bracket and
//!   the 9×9 `r̂` identities (CYBE/QYBE).
//! * [`classify`]: the nine equivalence classes A–I.
//! * [`charts`]: q-deformed coordinate charts and the named Poisson algebras.
//! * [`dynamics`]: Lotka–Volterra flows and an embedded Runge–Kutta integrator.
//! * [`qalgebra`]: the quantum book group as a q-commutation rewriting system.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bracket;
pub mod charts;
pub mod classify;
pub mod dynamics;
pub mod exact;
pub mod hopf;
pub mod qalgebra;
pub mod rmatrix;
pub mod sample;

pub use bracket::{Chart, PLParams, Param, PoissonStructure, RationalFunction};
pub use exact::{AlgebraError, Monomial, Poly, PolyMatrix, Rational, Symbol, Var};
