use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Truncated Laurent series `sum_{k=low}^{K} c_k eps^k` in one variable.
///
/// `truncation_order` is the highest power whose coefficient is known; every
/// operation propagates it so that no unknown term is ever reported as valid.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    low: i32,
    coeffs: Vec<f64>,
}

impl LaurentSeries {
    /// Series whose lowest stored power is `low`; `coeffs[i]` multiplies `eps^(low + i)`.
    pub fn new(low: i32, coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { low, coeffs }
    }

    /// `1 / (1 + eps)` known through `eps^order`.
    pub fn geometric_alternating(order: i32) -> Self {
        let coeffs = (0..=order)
            .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        Self::new(0, coeffs)
    }

    pub fn one(order: i32) -> Self {
        let mut coeffs = vec![0.0; order as usize + 1];
        coeffs[0] = 1.0;
        Self::new(0, coeffs)
    }

    /// Order of the pole at `eps = 0` (negative for a zero).
    pub fn pole_order(&self) -> i32 {
        -self.low
    }

    pub fn truncation_order(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `eps^k`; `None` above the truncation order.
    pub fn coeff(&self, k: i32) -> Option<f64> {
        if k > self.truncation_order() {
            None
        } else if k < self.low {
            Some(0.0)
        } else {
            Some(self.coeffs[(k - self.low) as usize])
        }
    }

    /// Like [`Self::coeff`] but fails loudly when `k` is beyond the truncation.
    pub fn require(&self, k: i32) -> Result<f64> {
        self.coeff(k).ok_or_else(|| {
            Error::Internal(format!(
                "coefficient of eps^{k} requested but series is only known through eps^{}",
                self.truncation_order()
            ))
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn powi(&self, n: u32) -> Self {
        let order = self.truncation_order().max(0);
        let mut acc = Self::one(order + n as i32 * self.pole_order().max(0));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; the lowest stored coefficient must be nonzero.
    pub fn recip(&self) -> Result<Self> {
        let lead = self.coeffs[0];
        if lead == 0.0 {
            return Err(Error::Domain("leading coefficient is zero".into()));
        }
        let n = self.coeffs.len();
        let mut inv = vec![0.0; n];
        inv[0] = 1.0 / lead;
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| self.coeffs[j] * inv[k - j]).sum();
            inv[k] = -s / lead;
        }
        Ok(Self::new(-self.low, inv))
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let low = self.low + rhs.low;
        // (a + O(eps^{Ka+1})) (b + O(eps^{Kb+1})) is known through min(Ka + low_b, Kb + low_a)
        let trunc = (self.truncation_order() + rhs.low).min(rhs.truncation_order() + self.low);
        let len = (trunc - low + 1).max(1) as usize;
        let mut out = vec![0.0; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if let Some(slot) = out.get_mut(i + j) {
                    *slot += a * b;
                }
            }
        }
        LaurentSeries::new(low, out)
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let low = self.low.min(rhs.low);
        let trunc = self.truncation_order().min(rhs.truncation_order());
        let coeffs = (low..=trunc)
            .map(|k| self.coeff(k).unwrap() + rhs.coeff(k).unwrap())
            .collect();
        LaurentSeries::new(low, coeffs)
    }
}
