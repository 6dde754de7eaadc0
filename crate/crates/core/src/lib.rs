//! Exact arithmetic for saw-tooth list norms and integral factorial ratios.
//!
//! A list `[a1, ..., an]` of nonzero integers defines the 1-periodic function
//! `a(x) = sum psi(aj x)` with `psi(t) = 1/2 - {t}`. Its norm is `int_0^1 a(x)^2 dx`.
//! Everything here is exact: integers are arbitrary precision and rationals are
//! always reduced.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod bounds;
mod error;
pub mod integrality;
pub mod liouville;
pub mod list;
pub mod rational;
pub mod search;
pub mod separation;

pub use error::{Error, Result};
pub use list::{ListType, SignedList};
pub use rational::ExactRational;
