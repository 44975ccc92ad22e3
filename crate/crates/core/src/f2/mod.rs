//! Linear algebra over GF(2) on bit-packed dense matrices.

mod bitvec;
mod linalg;
mod matrix;

pub use bitvec::BitVec;
pub use linalg::{Echelon, StandardForm};
pub use matrix::BinaryMatrix;

pub(crate) use bitvec::{weight_words, xor_words, WORD_BITS};
