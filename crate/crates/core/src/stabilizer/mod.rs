//! Pauli operators, stabilizer and subsystem codes, and the code catalog.

pub mod catalog;
pub mod code;
pub mod pauli;

pub use catalog::{build_code, CodeSpec};
pub use code::{css_from_classical, DecoderId, StabilizerCode};
pub use pauli::Pauli;
