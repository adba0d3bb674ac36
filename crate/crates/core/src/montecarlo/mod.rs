//! Monte Carlo sampling of extended rectangles and the single-fault scan.

pub mod engine;
pub mod estimate;
pub mod scan;
pub mod source;

pub use engine::{Engine, TrialOutcome, Verdict};
pub use estimate::{count_failures, estimate_p1, trial_rng, FailureEstimate};
pub use scan::{single_fault_scan, Malignancy};
pub use source::{ExplicitFaults, FaultSource, InstanceKey, RandomFaults, Recording};
