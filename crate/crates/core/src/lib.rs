//! Exact integer machinery for deciding whether a number can be a friend of 10.
//!
//! A friend of 10 is an integer N > 10 with abundancy index sigma(N)/N equal
//! to 9/5.  Everything here is exact: factored integers, arbitrary-precision
//! rationals, sigma valuations, multiplicative orders.  On top of the
//! foundations sit a filter pipeline of necessary conditions, a bounded search
//! harness, and an elimination engine that re-derives the six-prime-factor
//! impossibility case by case with machine-checkable witnesses.

pub mod abundancy;
pub mod arith;
pub mod chains;
pub mod conditions;
pub mod config;
pub mod order_theory;

pub use arith::{ExactRatio, Factorization};
pub use config::KitConfig;
