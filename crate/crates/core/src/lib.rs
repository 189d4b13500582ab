//! Arithmetic summability and arithmetic convergence over the geometric real
//! field.
//!
//! The geometric reals are the positive reals with multiplication as addition
//! and `x^(ln y)` as multiplication. Every value is stored by its natural
//! logarithm (its *exponent*), so field operations reduce to ordinary
//! arithmetic on exponents and integer-exponent computations stay exact.
//!
//! Modules:
//!
//! * [`field`] - [`GReal`], tolerances and geometric sums.
//! * [`divisor`] - divisors, gcd, factorization, the geometric Möbius function
//!   and Dirichlet convolution.
//! * [`transform`] - divisor-sum and Möbius transforms, gcd pullback,
//!   divisor restriction and the truncated divisibility matrices.
//! * [`convergence`] - membership checks for arithmetically convergent,
//!   arithmetically summable and eventually-zero sequences, and divisor-chain
//!   extraction.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod convergence;
pub mod divisor;
mod error;
pub mod field;
pub mod transform;

pub use convergence::{ChainReport, Mode, MembershipReport, Space, Verdict};
pub use divisor::{ArithFn, Factorizer};
pub use error::{Error, Result};
pub use field::{GReal, Tolerance};
pub use transform::{DivisorMatrix, GSeq, MatrixKind};
