//! Tabulated arithmetic functions on `[1, N]`.

mod additive;
mod catalog;
mod mean_value;
mod spf;
mod table;
mod tau;

pub use additive::{sieve_additive, SQRT_GROWTH_ALPHA};
pub use catalog::{catalog, catalog_by_name, FunctionName};
pub use mean_value::{mean_value_check, MeanValuePoint};
pub use spf::{build_spf, SpfTable};
pub use table::{FunctionTable, TableMeta, HSV_MAGIC};
pub use tau::{binomial, piltz_name, sieve_tau_r};
