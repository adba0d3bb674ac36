//! Pseudo-threshold fitting, extrapolation, closed-form scaling and
//! overhead tables.

pub mod fit;
pub mod report;
pub mod scaling;

pub use fit::{extrapolate_log_linear, fit_polynomial, fit_pseudo_threshold, CurvePoint, LogLinear, ThresholdEstimate};
pub use report::{overhead_report, render_csv, render_markdown, Cell, OverheadInput, OverheadRow};
pub use scaling::{asymptotic_threshold, binomial_threshold, project_p1, threshold_from_sets};
