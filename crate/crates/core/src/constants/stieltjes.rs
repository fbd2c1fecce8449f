use crate::error::{Error, Result};

use super::laurent::LaurentSeries;

/// Largest Stieltjes index available from the built-in table.
pub const STIELTJES_MAX: usize = 8;

/// Absolute error bound on every table entry, dominated by `f64` rounding.
pub const STIELTJES_ABS_ERROR: f64 = 1e-15;

// Digits beyond f64 precision are kept as published.
#[allow(clippy::excessive_precision)]
const STIELTJES: [f64; STIELTJES_MAX + 1] = [
    0.577_215_664_901_532_860_61,
    -0.072_815_845_483_676_724_861,
    -0.009_690_363_192_872_318_484_5,
    0.002_053_834_420_303_345_866_2,
    0.002_325_370_065_467_300_057_5,
    0.000_793_323_817_301_062_701_75,
    -0.000_238_769_345_430_199_609_87,
    -0.000_527_289_567_057_751_046_07,
    -0.000_352_123_353_803_039_509_6,
];

/// Stieltjes constants `gamma_0 ..= gamma_{k_max}`; `gamma_0` is Euler's constant.
pub fn stieltjes(k_max: usize) -> Result<Vec<f64>> {
    if k_max > STIELTJES_MAX {
        return Err(Error::Unsupported(format!(
            "Stieltjes constants are tabulated through index {STIELTJES_MAX}, requested {k_max}"
        )));
    }
    Ok(STIELTJES[..=k_max].to_vec())
}

/// `zeta(1 + eps) = 1/eps + sum_{k>=0} (-1)^k gamma_k eps^k / k!`, known through `eps^order`.
pub fn zeta_laurent(order: usize) -> Result<LaurentSeries> {
    let gammas = stieltjes(order)?;
    let mut coeffs = Vec::with_capacity(order + 2);
    coeffs.push(1.0);
    let mut factorial = 1.0;
    for (k, g) in gammas.into_iter().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * g / factorial);
    }
    Ok(LaurentSeries::new(-1, coeffs))
}

/// Coefficient-wise bound on the error of [`zeta_laurent`] from table error.
pub(crate) fn zeta_laurent_error(order: usize) -> LaurentSeries {
    let mut coeffs = vec![0.0; order + 2];
    let mut factorial = 1.0;
    for k in 0..=order {
        if k > 0 {
            factorial *= k as f64;
        }
        coeffs[k + 1] = STIELTJES_ABS_ERROR / factorial;
    }
    LaurentSeries::new(-1, coeffs)
}
