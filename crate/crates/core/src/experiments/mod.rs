//! Grid validation of asymptotic formulas against exact values.

mod record;
mod report;
mod validate;

pub use record::{ExperimentRecord, ReportConfig, ValidationKind, ValidationReport, Verdict};
pub use report::{emit_report, ReportFormat, CSV_HEADER};
pub use validate::{
    judge, theorem1_main_term, validate_single_sum, validate_tau_formula, validate_theorem1,
    DEFAULT_TREND_THRESHOLD, MIN_THEOREM_GRID_X,
};
