//! Exact construction of Kostant's cubic Dirac operator for a quadratic Lie
//! algebra `g` with quadratic subalgebra `h`, together with executable checks
//! of the identities that govern its square.
//!
//! All arithmetic is over arbitrary precision rationals. Orthonormal bases
//! are replaced by orthogonal ones with dual bases `X^i = X_i / B(X_i, X_i)`,
//! so no square roots are ever needed.

pub mod arith;
pub mod catalog;
pub mod clifford;
pub mod dirac;
pub mod envelope;
pub mod error;
pub mod forms;
pub mod lie;
pub mod tensor;

pub use arith::{Rational, RationalMatrix};
pub use error::{Error, Result};
