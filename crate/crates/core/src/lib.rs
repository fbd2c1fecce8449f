//! Exact evaluation of hyperbolic floor-function sums
//! `S_{f,r}(x) = sum_{n_1 ... n_r <= x} f(floor(x / (n_1 ... n_r)))`,
//! the constants of their asymptotic main term, and grid validation of that
//! main term against exact values.

pub mod constants;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod hyperbolic;
pub mod sieve;

pub use constants::{
    assemble_main_term, compute_aj, compute_ci, eval_main_term, stieltjes, ConstantEstimate,
    LaurentSeries, MainTermPolynomial,
};
pub use error::{Error, Result};
pub use exact::ExactSum;
pub use experiments::{
    emit_report, validate_single_sum, validate_tau_formula, validate_theorem1, ExperimentRecord,
    ReportFormat, ValidationReport, Verdict,
};
pub use hyperbolic::{
    sum_blocks, sum_direct, tau2_hyperbola, tau_r_partial, PrefixSumTable, SumMethod, SumResult,
};
pub use sieve::{
    build_spf, catalog, sieve_additive, sieve_tau_r, FunctionName, FunctionTable, SpfTable,
    TableMeta,
};
