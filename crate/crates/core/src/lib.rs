//! Exact linear algebra for algebras generated by pairs of positive
//! matrices: span closure, order structure, named constructions, theorem
//! predicates and a seeded search harness.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod io;
pub mod order;
pub mod rng;
pub mod search;
pub mod verifier;

pub use error::{Error, Result};
pub use exact::{Matrix, Rational};
