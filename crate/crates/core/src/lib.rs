//! Exact search, classification and lattice embedding of Heron simplices.
//!
//! A Heron simplex has integer edge lengths and integer measures of every
//! sub-simplex (areas, volumes, …). This crate provides the exact kernel
//! ([`simplex`]), bounded enumerators for the special tetrahedron classes
//! ([`search`]), integer embeddings of integer-distance point sets
//! ([`lattice`]) and exhaustive residue checks of divisibility properties
//! ([`modular`]).

pub mod arith;
pub mod error;
pub mod lattice;
pub mod modular;
pub mod search;
pub mod simplex;

pub use error::{Counterexample, Error, Result};
