//! Gadget synthesis: encoders, ancilla factories, EC gadgets and extended
//! rectangles.

pub mod ec;
pub mod encoder;
pub mod exrec;
pub mod factory;
pub mod reichardt;
pub mod schedule;

pub use ec::{EcGadget, GateKind};
pub use encoder::{encoder, span_encoder, standard_a, Basis, EncoderPlan};
pub use exrec::{build_exrec, count_cx_per_rec, rectangle_census, CxCount, EcStyle, ExRec, ExRecConfig};
pub use factory::{Factory, VerifyStyle};
pub use schedule::{latin_listing, latin_schedule, LatinSchedule};
