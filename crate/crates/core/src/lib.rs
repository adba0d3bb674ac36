//! Extended-rectangle synthesis and Monte Carlo analysis for quantum codes.
//!
//! Codes from a fixed catalog are turned into CNOT extended rectangles
//! (leading error correction, transversal gate, trailing error correction),
//! sampled under depolarizing noise and judged with the coset-leader
//! correctness test. Pseudo-thresholds are fitted from the resulting
//! failure-rate curves.

pub mod bits;
pub mod circuit;
pub mod decoders;
pub mod error;
pub mod gadgets;
pub mod galois;
pub mod montecarlo;
pub mod stabilizer;
pub mod threshold;

pub use error::{Error, Result};
