//! Exact computation of discriminants of skew polynomial rings and quantum
//! generalized Weyl algebras over their centers.

pub mod commring;
pub mod disccore;
pub mod error;
pub mod gwa;
pub mod intlattice;
pub mod morphisms;
pub mod poly;
pub mod scalars;
pub mod skewpoly;

pub use error::{Error, Result};
pub use scalars::CycScalar;
