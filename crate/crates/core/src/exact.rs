//! Exact accumulation of rational terms with machine-integer parts.
//!
//! Terms are bucketed by denominator and summed in 128-bit integers; buckets
//! are combined into a single big rational only when the total is read.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactSum {
    integral: i128,
    by_denominator: BTreeMap<i64, i128>,
}

fn overflow() -> Error {
    Error::Overflow("128-bit accumulator".into())
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight * num / den`; `den` must be positive.
    #[inline]
    pub fn add_scaled(&mut self, num: i64, den: i64, weight: i64) -> Result<()> {
        debug_assert!(den > 0);
        let term = i128::from(num)
            .checked_mul(i128::from(weight))
            .ok_or_else(overflow)?;
        let slot = if den == 1 {
            &mut self.integral
        } else {
            self.by_denominator.entry(den).or_insert(0)
        };
        *slot = slot.checked_add(term).ok_or_else(overflow)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.integral == 0 && self.by_denominator.values().all(|v| *v == 0)
    }

    /// The exact total, reduced to lowest terms.
    pub fn to_ratio(&self) -> BigRational {
        let mut terms: Vec<BigRational> = self
            .by_denominator
            .iter()
            .filter(|(_, &num)| num != 0)
            .map(|(&den, &num)| BigRational::new(BigInt::from(num), BigInt::from(den)))
            .collect();
        terms.push(BigRational::from_integer(BigInt::from(self.integral)));
        // pairwise combination keeps intermediate denominators balanced
        while terms.len() > 1 {
            let mut next = Vec::with_capacity(terms.len().div_ceil(2));
            let mut it = terms.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a + b),
                    None => next.push(a),
                }
            }
            terms = next;
        }
        terms.pop().unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> f64 {
        if self.by_denominator.is_empty() {
            return self.integral as f64;
        }
        ratio_to_f64(&self.to_ratio())
    }
}

/// Nearest-ish `f64` of a big rational (exact for integers below 2^53).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
