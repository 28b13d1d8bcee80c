//! Exact-arithmetic toolkit for diagonal differential operators on
//! orthogonal polynomial bases.

pub mod bases;
pub mod cli;
pub mod classify;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod hermite;
pub mod jensen;
pub mod laguerre;
pub mod peetre;
pub mod poly;
pub mod rational;
pub mod seq;
pub mod series;
pub mod sturm;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Rational;
pub use seq::SeqSpec;
