use crate::error::{Error, Result};

/// Smallest-prime-factor table on `[2, limit]`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct SpfTable {
    limit: u32,
    spf: Vec<u32>,
}

pub(crate) fn try_alloc<T: Clone>(len: usize, fill: T, limit: u64) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|e| Error::Resource {
        limit,
        reason: e.to_string(),
    })?;
    v.resize(len, fill);
    Ok(v)
}

/// Builds the smallest-prime-factor table for every `n <= limit`.
pub fn build_spf(limit: u64) -> Result<SpfTable> {
    if limit < 2 {
        return Err(Error::Domain(format!(
            "spf limit must be >= 2, got {limit}"
        )));
    }
    let limit32 = u32::try_from(limit).map_err(|_| Error::Resource {
        limit,
        reason: "limit exceeds 32-bit index range".into(),
    })?;
    let n = limit32 as usize;
    let mut spf = try_alloc(n + 1, 0u32, limit)?;
    // pi(N) < 1.26 N / ln N
    let prime_cap = ((1.26 * limit as f64) / (limit as f64).ln().max(1.0)) as usize + 16;
    let mut primes: Vec<u32> = Vec::new();
    primes
        .try_reserve_exact(prime_cap)
        .map_err(|e| Error::Resource {
            limit,
            reason: e.to_string(),
        })?;

    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si {
                break;
            }
            let m = i * p as usize;
            if m > n {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(SpfTable {
        limit: limit32,
        spf,
    })
}

impl SpfTable {
    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    #[inline]
    pub fn spf(&self, n: u64) -> u32 {
        debug_assert!(n >= 2 && n <= self.limit as u64);
        self.spf[n as usize]
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit as u64 && self.spf[n as usize] as u64 == n
    }

    /// Splits `n` into `(p, a, rest)` with `p = spf(n)`, `p^a ∥ n` and `rest = n / p^a`.
    #[inline]
    pub fn split_smallest(&self, n: u64) -> (u32, u32, u64) {
        let p = self.spf(n) as u64;
        let mut rest = n / p;
        let mut a = 1;
        while rest.is_multiple_of(p) {
            rest /= p;
            a += 1;
        }
        (p as u32, a, rest)
    }

    /// Full factorization of `n` as `(prime, exponent)` pairs in ascending prime order.
    pub fn factorize(&self, mut n: u64) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let (p, a, rest) = self.split_smallest(n);
            out.push((p, a));
            n = rest;
        }
        out
    }

    /// Largest exponent any prime can carry below the limit, i.e. `floor(log2 limit)`.
    pub fn max_exponent(&self) -> u32 {
        63 - (self.limit as u64).leading_zeros()
    }
}
