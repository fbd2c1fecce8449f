use crate::error::{Error, Result};

use super::laurent::LaurentSeries;
use super::series::ConstantEstimate;
use super::stieltjes::{zeta_laurent, zeta_laurent_error, STIELTJES_MAX};

/// Largest `r` supported by [`compute_aj`].
pub const MAX_PILTZ_ORDER: u32 = 8;

/// Coefficients `a_0 ..= a_{r-1}` of the polynomial `P` in
/// `sum_{n<=x} tau_r(n) = x P(log x) + (error)`.
///
/// `x P(log x)` is the residue at `s = 1` of `zeta(s)^r x^s / s`. Writing
/// `s = 1 + eps` and `G(eps) = zeta(1+eps)^r / (1 + eps)`, the residue is
/// `x sum_m (log x)^m / m! * [eps^{-1-m}] G`, so `a_m = [eps^{-1-m}] G / m!`.
///
/// Each estimate's `tail_bound` propagates the Stieltjes table error through
/// the same series arithmetic (with absolute values) plus a rounding allowance.
pub fn compute_aj(r: u32) -> Result<Vec<ConstantEstimate>> {
    if r == 0 {
        return Err(Error::Contract("r must be >= 1".into()));
    }
    if r > MAX_PILTZ_ORDER {
        return Err(Error::Unsupported(format!(
            "r = {r} exceeds {MAX_PILTZ_ORDER}"
        )));
    }
    let order = STIELTJES_MAX;
    let zeta = zeta_laurent(order)?;
    let geometric = LaurentSeries::geometric_alternating(order as i32 + r as i32);
    let g = &zeta.powi(r) * &geometric;

    // majorants: |G| and |G| evaluated with every zeta coefficient inflated by its error
    let zeta_abs = zeta.map(f64::abs);
    let zeta_hi = &zeta_abs + &zeta_laurent_error(order);
    let geometric_abs = geometric.map(f64::abs);
    let g_abs = &zeta_abs.powi(r) * &geometric_abs;
    let g_hi = &zeta_hi.powi(r) * &geometric_abs;

    let mut out = Vec::with_capacity(r as usize);
    let mut factorial = 1.0;
    for m in 0..r {
        if m > 0 {
            factorial *= f64::from(m);
        }
        let k = -1 - m as i32;
        let coeff = g.require(k)?;
        let propagated = g_hi.require(k)? - g_abs.require(k)?;
        let rounding = 8.0 * f64::EPSILON * g_abs.require(k)?;
        out.push(ConstantEstimate {
            label: format!("a_{m}({r})"),
            value: coeff / factorial,
            truncation_n: order as u64,
            tail_bound: (propagated + rounding) / factorial,
            alpha_used: None,
        });
    }
    Ok(out)
}
