//! Exact arithmetic for the sum of four squares over real quadratic fields:
//! representation numbers, local densities, Eisenstein coefficients and
//! the L-values behind them.

pub mod arith;
pub mod cli;
pub mod density;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod lvalues;
pub mod rational;
pub mod rep;
pub mod sweep;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldContext, QuadInt};
pub use rational::Rational;
