//! Exact Hardy sums `S(d, c)`, `S₄(d, c)` and Dedekind sums `s(d, c)`.
//!
//! The sums are computed both from their defining sums and in `O(log c)`
//! steps from subgroup continued fraction expansions of `d/c`. The crate also
//! contains the density constructions that realize prescribed sum values
//! near a target, and floating point checks of the modular transformation
//! laws behind the fast formulas.

pub mod arith;
pub mod cfe;
pub mod cli;
pub mod density;
pub mod error;
pub mod qverify;
pub mod sums;

pub use arith::{reduce, Cusp, GroupTag, Mat2, Parity, Rational};
pub use cfe::{CfKind, ContinuedFraction, Convergents, GeneratorWord};
pub use error::{Error, Result};
