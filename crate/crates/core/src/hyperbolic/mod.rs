//! Exact evaluation of `S_{f,r}(x) = sum_{n<=x} f(floor(x/n)) tau_r(n)`.
//!
//! Two routes are provided: a direct pass over `n <= x`, and a block pass that
//! groups `n` by the value `q = floor(x/n)` and weights each group by a
//! difference of `tau_r` prefix sums. Both produce the same exact rational.

mod prefix;

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::ExactSum;
use crate::sieve::FunctionTable;

pub use prefix::{tau2_hyperbola, tau_r_partial, PrefixSumTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    Direct,
    Blocks,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::Direct => "direct",
            SumMethod::Blocks => "blocks",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub x: u64,
    pub r: u32,
    pub f_name: String,
    pub value: BigRational,
    pub method: SumMethod,
}

/// A maximal run `lo..=hi` of `n` on which `floor(x/n) == q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub q: u64,
    pub lo: u64,
    pub hi: u64,
}

/// The `O(sqrt x)` blocks of `[1, x]` in increasing `n` (strictly decreasing `q`).
pub fn floor_blocks(x: u64) -> impl Iterator<Item = Block> {
    let mut lo = 1u64;
    std::iter::from_fn(move || {
        if lo > x {
            return None;
        }
        let q = x / lo;
        let hi = x / q;
        let block = Block { q, lo, hi };
        lo = hi + 1;
        Some(block)
    })
}

fn check_x(x: u64) -> Result<()> {
    if x == 0 {
        return Err(Error::Domain("x must be a positive integer".into()));
    }
    Ok(())
}

fn order_of(name: &str, order: Option<u32>) -> Result<u32> {
    order.ok_or_else(|| Error::Contract(format!("{name} is not a tau_r weight table")))
}

/// `sum_{n<=x} tau_r(n) f(floor(x/n))`, one term per `n`.
///
/// With `weights = tau_1` this is the single sum `sum_{n<=x} f(floor(x/n))`.
pub fn sum_direct(f: &FunctionTable, weights: &FunctionTable, x: u64) -> Result<SumResult> {
    check_x(x)?;
    let r = order_of(weights.name(), weights.piltz_order())?;
    f.check_covers(x)?;
    weights.check_covers(x)?;
    let w = weights
        .integers()
        .ok_or_else(|| Error::Contract("weights must be integer valued".into()))?;
    let mut acc = ExactSum::new();
    for n in 1..=x {
        let q = x / n;
        acc.add_scaled(f.numerator(q), f.denominator(q), w[n as usize])?;
    }
    Ok(SumResult {
        x,
        r,
        f_name: f.name().to_string(),
        value: acc.to_ratio(),
        method: SumMethod::Direct,
    })
}

/// Same value as [`sum_direct`], visiting only the distinct values of `floor(x/n)`.
pub fn sum_blocks(f: &FunctionTable, prefix: &PrefixSumTable, x: u64) -> Result<SumResult> {
    check_x(x)?;
    let r = order_of(prefix.name(), prefix.piltz_order())?;
    f.check_covers(x)?;
    prefix.check_covers(x)?;
    let mut acc = ExactSum::new();
    for Block { q, lo, hi } in floor_blocks(x) {
        // T(x/q) - T(x/(q+1)), with hi = x/q and lo - 1 = x/(q+1)
        acc.add_scaled(f.numerator(q), f.denominator(q), prefix.range(lo, hi))?;
    }
    Ok(SumResult {
        x,
        r,
        f_name: f.name().to_string(),
        value: acc.to_ratio(),
        method: SumMethod::Blocks,
    })
}
