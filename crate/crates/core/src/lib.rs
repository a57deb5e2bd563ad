//! Exact decision procedures over the rationals: p-adic arithmetic and
//! Hensel lifting, local and global representation by diagonal quadratic
//! forms, quaternionic semi-local rings and the universal characterization
//! of the integers inside Q, Pell equations, and Turing machines with
//! Goedel coding.

pub mod arith;
pub mod definability;
pub mod dprm;
pub mod error;
pub mod forms;
pub mod machines;
pub mod padic;

pub use arith::{Place, Prime, Rational, Valuation};
pub use error::{Error, Result};
