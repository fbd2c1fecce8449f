use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::FunctionTable;

/// A numerically computed constant with a bound on its truncation error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub label: String,
    pub value: f64,
    /// Truncation point: the last series index summed (or the series order
    /// for Laurent-derived constants).
    pub truncation_n: u64,
    /// Upper bound on `|true - value|`.
    pub tail_bound: f64,
    pub alpha_used: Option<f64>,
}

impl ConstantEstimate {
    /// A constant known exactly, e.g. a hand-supplied test input.
    pub fn exact(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
            truncation_n: 0,
            tail_bound: 0.0,
            alpha_used: None,
        }
    }
}

/// Safety factor applied to the empirical term-size constant.
pub const TAIL_SAFETY_FACTOR: f64 = 2.0;

#[inline]
fn log_pow(log: f64, i: u32) -> f64 {
    // (log 1)^0 = 1 by convention
    if i == 0 {
        1.0
    } else {
        log.powi(i as i32)
    }
}

/// Summand `f(d) ((log d)^i / d - (log (d+1))^i / (d+1))`.
///
/// For `i = 0` the difference is taken in the telescoped form `1 / (d (d+1))`.
#[inline]
pub fn ci_term(fd: f64, d: u64, i: u32) -> f64 {
    let df = d as f64;
    if i == 0 {
        fd / (df * (df + 1.0))
    } else {
        fd * (log_pow(df.ln(), i) / df - log_pow((df + 1.0).ln(), i) / (df + 1.0))
    }
}

/// `max_{lo<=d<=hi} |term_d| d^{2-alpha} / (log d)^i`, the empirical constant in
/// `term_d << (log d)^i / d^{2-alpha}`.
pub fn scaled_term_max(f: &FunctionTable, i: u32, alpha: f64, lo: u64, hi: u64) -> f64 {
    (lo.max(1)..=hi)
        .filter(|&d| i == 0 || d >= 2)
        .map(|d| {
            let df = d as f64;
            ci_term(f.value_f64(d), d, i).abs() * df.powf(2.0 - alpha) / log_pow(df.ln(), i)
        })
        .fold(0.0, f64::max)
}

/// `Gamma(i + 1, z) = i! e^{-z} sum_{k<=i} z^k / k!` via the upward recursion.
pub fn upper_incomplete_gamma_int(i: u32, z: f64) -> f64 {
    let ez = (-z).exp();
    let mut g = ez;
    let mut zpow = 1.0;
    for n in 1..=i {
        zpow *= z;
        g = n as f64 * g + zpow * ez;
    }
    g
}

/// `int_N^inf (log t)^i t^{alpha-2} dt = Gamma(i+1, (1-alpha) log N) / (1-alpha)^{i+1}`.
pub fn tail_integral(i: u32, alpha: f64, n: u64) -> f64 {
    let s = 1.0 - alpha;
    upper_incomplete_gamma_int(i, s * (n as f64).ln()) / s.powi(i as i32 + 1)
}

/// Partial sum through `N` of `sum_d f(d) ((log d)^i/d - (log(d+1))^i/(d+1))` with a tail bound.
///
/// The tail bound is `K * int_N^inf (log t)^i / t^{2-alpha} dt`, where `K` is
/// twice the largest observed `|term_d| d^{2-alpha} / (log d)^i` over `(N/2, N]`
/// and `alpha` is the table's growth exponent.
pub fn compute_ci(f: &FunctionTable, i: u32, n: u64) -> Result<ConstantEstimate> {
    if n < 1 {
        return Err(Error::Domain("truncation point must be >= 1".into()));
    }
    if i >= 1 && n < 2 {
        return Err(Error::Domain(format!(
            "C_{i} needs N >= 2: the tail constant divides by (log d)^{i}, which vanishes at d = 1"
        )));
    }
    f.check_covers(n)?;
    let alpha = f
        .alpha()
        .ok_or_else(|| Error::Contract(format!("{} has no growth exponent alpha", f.name())))?;
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Contract(format!("alpha = {alpha} outside [0, 1)")));
    }

    let value: f64 = if i == 0 {
        (1..=n).map(|d| ci_term(f.value_f64(d), d, 0)).sum()
    } else {
        // reuse log(d+1) as the next log d
        let mut sum = 0.0;
        let mut log_d = 0.0f64;
        for d in 1..=n {
            let df = d as f64;
            let log_next = (df + 1.0).ln();
            sum +=
                f.value_f64(d) * (log_d.powi(i as i32) / df - log_next.powi(i as i32) / (df + 1.0));
            log_d = log_next;
        }
        sum
    };

    let k = TAIL_SAFETY_FACTOR * scaled_term_max(f, i, alpha, n / 2 + 1, n);
    let tail_bound = if k == 0.0 {
        0.0
    } else {
        k * tail_integral(i, alpha, n)
    };
    Ok(ConstantEstimate {
        label: format!("C_{i}({})", f.name()),
        value,
        truncation_n: n,
        tail_bound,
        alpha_used: Some(alpha),
    })
}
