//! Exact rational arithmetic and sparse multivariate polynomials.
//!
//! Everything here is exact: identity checks reduce to asking whether a
//! polynomial is literally the zero polynomial.

mod poly;
mod rational;

pub use poly::{Assignment, Family, Monomial, MultiPoly, Var};
pub use rational::{factorial, format_rational, int, parse_rational, rat, to_f64, Rational};
