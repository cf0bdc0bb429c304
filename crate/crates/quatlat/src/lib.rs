//! Exact-arithmetic ideal lattices from totally definite quaternion
//! algebras over totally real number fields: trace-form Gram matrices,
//! minima and minimal vectors, well-roundedness, and the classification of
//! the reduced norm one group.

pub mod enumerate;
pub mod error;
pub mod hnf;
pub mod interval;
pub mod lll;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod quat;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rat;
