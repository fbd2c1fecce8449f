use crate::error::{Error, Result};

use super::spf::{try_alloc, SpfTable};
use super::table::{FunctionTable, TableMeta};

/// Table name used for the Piltz divisor function `tau_r`.
pub fn piltz_name(r: u32) -> String {
    format!("tau_r({r})")
}

/// `binomial(a + r - 1, r - 1)` for `a = 0..=max_a`, i.e. `tau_r(p^a)`.
pub(crate) fn prime_power_values(r: u32, max_a: u32) -> Result<Vec<i64>> {
    (0..=max_a)
        .map(|a| {
            binomial(u64::from(a) + u64::from(r) - 1, u64::from(r) - 1)
                .and_then(|b| i64::try_from(b).ok())
                .ok_or_else(|| Error::Overflow(format!("tau_{r}(p^{a}) does not fit in 64 bits")))
        })
        .collect()
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Tabulates `tau_r(n)`, the number of ordered `r`-tuples with product `n`.
///
/// Multiplicative with `tau_r(p^a) = binomial(a + r - 1, r - 1)`. Any value
/// that leaves the 64-bit range is reported as [`Error::Overflow`].
pub fn sieve_tau_r(spf: &SpfTable, r: u32) -> Result<FunctionTable> {
    if r == 0 {
        return Err(Error::Contract("tau_r requires r >= 1".into()));
    }
    let limit = spf.limit();
    let pp = prime_power_values(r, spf.max_exponent())?;
    let mut values = try_alloc(limit as usize + 1, 0i64, limit)?;
    values[1] = 1;
    for n in 2..=limit {
        let (_, a, rest) = spf.split_smallest(n);
        values[n as usize] = values[rest as usize]
            .checked_mul(pp[a as usize])
            .ok_or_else(|| Error::Overflow(format!("tau_{r}({n}) does not fit in 64 bits")))?;
    }
    let meta = TableMeta {
        piltz_order: Some(r),
        ..TableMeta::new(piltz_name(r))
    };
    FunctionTable::from_integers(meta, values)
}
