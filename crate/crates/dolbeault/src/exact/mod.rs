//! Exact symbolic arithmetic: rationals, algebraic extension towers, and
//! polynomial factorization over both.

pub mod algebra;
pub mod factor;
pub mod zfactor;

pub use algebra::{Algebraic, Level, SharedTower, TPoly, Tower};
