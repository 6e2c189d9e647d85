//! Exact rational arithmetic and the dense matrix kernel.

mod echelon;
mod matrix;
mod rational;

pub use echelon::{rref, EchelonBasis, Rref};
pub use matrix::{commutator, mat_mul, Matrix};
pub use rational::Rational;
