//! Constants of the asymptotic main term.

mod laurent;
mod main_term;
mod residue;
mod series;
mod stieltjes;

pub use laurent::LaurentSeries;
pub use main_term::{assemble_main_term, eval_main_term, MainTermPolynomial};
pub use residue::{compute_aj, MAX_PILTZ_ORDER};
pub use series::{
    ci_term, compute_ci, scaled_term_max, tail_integral, upper_incomplete_gamma_int,
    ConstantEstimate, TAIL_SAFETY_FACTOR,
};
pub use stieltjes::{stieltjes, zeta_laurent, STIELTJES_ABS_ERROR, STIELTJES_MAX};
