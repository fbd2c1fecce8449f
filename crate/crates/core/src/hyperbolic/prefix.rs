use crate::error::{Error, Result};
use crate::sieve::FunctionTable;

/// Cumulative sums `sums[n] = sum_{m<=n} w(m)` of an integer-valued weight table.
#[derive(Debug, Clone)]
pub struct PrefixSumTable {
    name: String,
    piltz_order: Option<u32>,
    sums: Vec<i64>,
}

impl PrefixSumTable {
    pub fn new(weights: &FunctionTable) -> Result<Self> {
        let values = weights.integers().ok_or_else(|| {
            Error::Contract(format!(
                "prefix sums need integer weights; {} is rational",
                weights.name()
            ))
        })?;
        let mut sums = Vec::new();
        sums.try_reserve_exact(values.len())
            .map_err(|e| Error::Resource {
                limit: weights.limit(),
                reason: e.to_string(),
            })?;
        sums.push(0i64);
        let mut acc = 0i64;
        for &v in &values[1..] {
            acc = acc
                .checked_add(v)
                .ok_or_else(|| Error::Overflow(format!("prefix sum of {}", weights.name())))?;
            sums.push(acc);
        }
        Ok(Self {
            name: weights.name().to_string(),
            piltz_order: weights.piltz_order(),
            sums,
        })
    }

    pub fn limit(&self) -> u64 {
        self.sums.len() as u64 - 1
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn piltz_order(&self) -> Option<u32> {
        self.piltz_order
    }

    /// `sum_{m<=n} w(m)`; `n <= limit`.
    #[inline]
    pub fn get(&self, n: u64) -> i64 {
        self.sums[n as usize]
    }

    /// `sum_{lo<=m<=hi} w(m)` for `1 <= lo <= hi + 1`.
    #[inline]
    pub fn range(&self, lo: u64, hi: u64) -> i64 {
        self.sums[hi as usize] - self.sums[lo as usize - 1]
    }

    pub fn check_covers(&self, x: u64) -> Result<()> {
        Error::check_range(x, self.limit())
    }
}

/// `T(floor(y))` for a real `y >= 0`, where `T` is the prefix table's summatory function.
pub fn tau_r_partial(prefix: &PrefixSumTable, y: f64) -> Result<i64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::Domain(format!("argument {y} must be >= 0")));
    }
    let floor = y.floor();
    if floor > prefix.limit() as f64 {
        return Err(Error::Range {
            value: floor as u64,
            limit: prefix.limit(),
        });
    }
    Ok(prefix.get(floor as u64))
}

/// `T_2(y) = sum_{n<=y} tau(n)` by the Dirichlet hyperbola method, in `O(sqrt y)`.
pub fn tau2_hyperbola(y: u64) -> u128 {
    let s = y.isqrt();
    let twice: u128 = (1..=s).map(|n| u128::from(y / n)).sum::<u128>() * 2;
    twice - u128::from(s) * u128::from(s)
}
