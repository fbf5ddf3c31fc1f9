//! First-order Reed–Muller codes R(1, m) viewed as affine-invariant codes in
//! the group algebra F G, with information sets from CRT decompositions of
//! `2^m − 1` and permutation decoding by the cyclic group ⟨T_α⟩ combined with
//! a sweep of field translations.

pub mod code;
pub mod crt;
pub mod decoder;
pub mod error;
pub mod field;
pub mod harness;
pub mod matrix;
pub mod pd;
pub mod perm;
pub mod rng;
pub mod vector;

pub use error::{Error, Result};
