//! Exact GF(2) tooling for classical and quantum locally testable codes.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational: every
//! construction is a function from matrices to matrices, and every parameter
//! (dimension, distance, soundness) is computed by exhaustive search with
//! exact rational arithmetic. File formats, the command line and parallel
//! orchestration live in the `qltclab` crate.
//!
//! Module map:
//!
//! * [`f2`]: bit-packed matrices over GF(2), elimination, kernels, standard form.
//! * [`codes`]: classical and CSS codes with distance and soundness oracles.
//! * [`constructions`]: duplicated checks, check products, standardisation,
//!   random nested CSS codes.
//! * [`homology`]: chain complexes, repetition complexes and distance balancing.
//! * [`analysis`]: locality profiles, statement verification and sweeps.
//! * [`catalog`]: named codes used by the corpus and the command line.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod catalog;
pub mod codes;
pub mod constructions;
mod error;
pub mod f2;
pub mod homology;

pub use error::{Error, Result};

/// Exact non-negative rational used for soundness values.
pub type Rational = num_rational::Ratio<u64>;
