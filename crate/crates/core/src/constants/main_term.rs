use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::binomial;

use super::series::ConstantEstimate;

/// `x * sum_k b[k] (log x)^k`, the main term of `S_{f,r}(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermPolynomial {
    pub r: u32,
    pub b: Vec<f64>,
    pub a: Vec<ConstantEstimate>,
    pub c: Vec<ConstantEstimate>,
}

/// Collects the double sum `sum_j sum_{i<=j} binom(j,i) (-1)^i a_j C_i (log x)^{j-i}`
/// by powers of `log x`: `b[k] = sum_{j>=k} binom(j, j-k) (-1)^{j-k} a_j C_{j-k}`.
pub fn assemble_main_term(
    r: u32,
    a: &[ConstantEstimate],
    c: &[ConstantEstimate],
) -> Result<MainTermPolynomial> {
    let r_us = r as usize;
    if r == 0 {
        return Err(Error::Contract("r must be >= 1".into()));
    }
    if a.len() != r_us {
        return Err(Error::Contract(format!(
            "expected {r} a_j values, got {}",
            a.len()
        )));
    }
    if c.len() < r_us {
        return Err(Error::Contract(format!(
            "expected at least {r} C_i values, got {}",
            c.len()
        )));
    }
    let b = (0..r_us)
        .map(|k| {
            (k..r_us)
                .map(|j| {
                    let i = j - k;
                    let binom = binomial(j as u64, i as u64).expect("small binomial") as f64;
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    binom * sign * a[j].value * c[i].value
                })
                .sum()
        })
        .collect();
    Ok(MainTermPolynomial {
        r,
        b,
        a: a.to_vec(),
        c: c[..r_us].to_vec(),
    })
}

impl MainTermPolynomial {
    /// Degree in `log x`, ignoring vanishing top coefficients.
    pub fn degree(&self) -> Option<usize> {
        self.b.iter().rposition(|&v| v != 0.0)
    }
}

/// `x * sum_k b[k] (log x)^k` in double precision; meaningful for `x >= 2`.
pub fn eval_main_term(p: &MainTermPolynomial, x: u64) -> f64 {
    let xf = x as f64;
    let l = xf.ln();
    xf * p.b.iter().rev().fold(0.0, |acc, &bk| acc * l + bk)
}
