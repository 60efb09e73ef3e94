//! Exact scalars: arbitrary-precision rationals and dense polynomials in `q`.
//!
//! No multivariate polynomials and no rational functions live here.
//! Identities in `q, x, y` are checked by exact evaluation at rational points.

mod qpoly;
mod rational;

pub use qpoly::QPoly;
pub use rational::{rat_arith, RatOp, Rational};
