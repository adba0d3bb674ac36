//! Linear algebra over GF(2) and GF(2^m), classical cyclic and Reed-Solomon codes.

pub mod cyclic;
pub mod field;
pub mod matrix;

pub use cyclic::{ClassicalCode, ReedSolomon};
pub use field::GaloisField;
pub use matrix::BinaryMatrix;
