use num_rational::Ratio;
use num_traits::{CheckedAdd, Zero};

use crate::error::{Error, Result};

use super::spf::{try_alloc, SpfTable};
use super::table::{FunctionTable, TableMeta};

/// Growth exponent stored for functions bounded by `n^{1/2 + eps}`.
pub const SQRT_GROWTH_ALPHA: f64 = 0.5;

/// Tabulates the additive function `f(n) = sum_{p^a ∥ n} g(a)`.
///
/// `g` is queried once per exponent `0..=floor(log2 limit)` and must satisfy
/// `g(0) = 0`. The table gets `alpha = 1/2`; `beta` is supplied by the caller.
pub fn sieve_additive<G>(
    spf: &SpfTable,
    name: impl Into<String>,
    mut g: G,
    beta: Option<f64>,
) -> Result<FunctionTable>
where
    G: FnMut(u32) -> Result<Ratio<i64>>,
{
    let weights: Vec<Ratio<i64>> = (0..=spf.max_exponent())
        .map(&mut g)
        .collect::<Result<_>>()?;
    if !weights[0].is_zero() {
        return Err(Error::Contract(format!(
            "g(0) must be 0, got {}",
            weights[0]
        )));
    }
    let meta = TableMeta::new(name).with_growth(SQRT_GROWTH_ALPHA, beta);
    let limit = spf.limit();
    let len = limit as usize + 1;

    if weights.iter().all(|w| w.is_integer()) {
        let w: Vec<i64> = weights.iter().map(|w| w.to_integer()).collect();
        let mut values = try_alloc(len, 0i64, limit)?;
        for n in 2..=limit {
            let (_, a, rest) = spf.split_smallest(n);
            values[n as usize] = values[rest as usize]
                .checked_add(w[a as usize])
                .ok_or_else(|| Error::Overflow(format!("{}({n})", meta.name)))?;
        }
        return FunctionTable::from_integers(meta, values);
    }

    let mut values = try_alloc(len, Ratio::zero(), limit)?;
    for n in 2..=limit {
        let (_, a, rest) = spf.split_smallest(n);
        values[n as usize] = values[rest as usize]
            .checked_add(&weights[a as usize])
            .ok_or_else(|| Error::Overflow(format!("{}({n})", meta.name)))?;
    }
    FunctionTable::from_ratios(meta, values)
}
