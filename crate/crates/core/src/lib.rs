//! Divided differences as Vandermonde-weighted integrals over sequential
//! rectangles, with exact and floating verification of the identity and its
//! supporting lemmas.

pub mod divdiff;
pub mod error;
pub mod exact;
pub mod funcs;
pub mod identity;
pub mod points;
pub mod quad;
pub mod symfun;

pub use error::{Error, Result};
