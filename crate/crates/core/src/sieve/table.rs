use std::io::{self, Read, Write};

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Magic prefix of the flat table cache format.
pub const HSV_MAGIC: &[u8; 4] = b"HSV1";

/// Metadata carried alongside a tabulated function.
///
/// `alpha` is the exponent in `f(n) << n^alpha` and `beta` the exponent in
/// `sum_{n<=x} f(n) << x (log log x)^beta`. Either is `None` when it does not
/// apply, e.g. for a Piltz weight table or for `tau`, whose mean value grows
/// like `x log x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableMeta {
    pub name: String,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    /// `Some(r)` when the table holds the Piltz divisor function `tau_r`.
    pub piltz_order: Option<u32>,
}

impl TableMeta {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            alpha: None,
            beta: None,
            piltz_order: None,
        }
    }

    pub fn with_growth(mut self, alpha: f64, beta: Option<f64>) -> Self {
        self.alpha = Some(alpha);
        self.beta = beta;
        self
    }
}

/// Exact values of one arithmetic function on `[1, N]`.
///
/// Values are rationals with machine-integer parts. Integer-valued tables do
/// not store denominators at all.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    meta: TableMeta,
    limit: u64,
    // index 0 is unused and holds 0
    numerators: Vec<i64>,
    denominators: Option<Vec<i64>>,
}

impl FunctionTable {
    /// Builds an integer-valued table; `values[n]` is `f(n)` and `values[0]` is ignored.
    pub fn from_integers(meta: TableMeta, mut values: Vec<i64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Contract("table needs at least one value".into()));
        }
        values[0] = 0;
        Ok(Self {
            meta,
            limit: values.len() as u64 - 1,
            numerators: values,
            denominators: None,
        })
    }

    /// Builds a table from `(numerator, denominator)` parts, reducing each value.
    ///
    /// Falls back to the integer representation when every denominator is 1.
    pub fn from_ratios(meta: TableMeta, values: Vec<Ratio<i64>>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Contract("table needs at least one value".into()));
        }
        let mut nums = Vec::with_capacity(values.len());
        let mut dens = Vec::with_capacity(values.len());
        nums.push(0);
        dens.push(1);
        for v in values.into_iter().skip(1) {
            if *v.denom() == 0 {
                return Err(Error::Contract("zero denominator".into()));
            }
            // Ratio keeps a positive denominator after reduction
            nums.push(*v.numer());
            dens.push(*v.denom());
        }
        let all_integer = dens.iter().all(|&d| d == 1);
        Ok(Self {
            meta,
            limit: nums.len() as u64 - 1,
            numerators: nums,
            denominators: if all_integer { None } else { Some(dens) },
        })
    }

    pub fn with_meta(mut self, meta: TableMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn meta(&self) -> &TableMeta {
        &self.meta
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn alpha(&self) -> Option<f64> {
        self.meta.alpha
    }

    pub fn beta(&self) -> Option<f64> {
        self.meta.beta
    }

    pub fn piltz_order(&self) -> Option<u32> {
        self.meta.piltz_order
    }

    pub fn is_integer_valued(&self) -> bool {
        self.denominators.is_none()
    }

    #[inline]
    pub fn numerator(&self, n: u64) -> i64 {
        self.numerators[n as usize]
    }

    #[inline]
    pub fn denominator(&self, n: u64) -> i64 {
        match &self.denominators {
            Some(d) => d[n as usize],
            None => 1,
        }
    }

    /// `f(n)` as an exact rational; `1 <= n <= limit`.
    #[inline]
    pub fn value(&self, n: u64) -> Ratio<i64> {
        Ratio::new_raw(self.numerator(n), self.denominator(n))
    }

    #[inline]
    pub fn value_f64(&self, n: u64) -> f64 {
        self.numerator(n) as f64 / self.denominator(n) as f64
    }

    /// Raw integer values (index 0 unused), when the table is integer-valued.
    pub fn integers(&self) -> Option<&[i64]> {
        if self.denominators.is_none() {
            Some(&self.numerators)
        } else {
            None
        }
    }

    pub fn check_covers(&self, x: u64) -> Result<()> {
        Error::check_range(x, self.limit)
    }

    /// Writes the table in the flat `HSV1` format: magic, limit as u64 LE,
    /// then `(numerator i64 LE, denominator u64 LE)` for `n = 1..=limit`.
    pub fn write_hsv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(HSV_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut buf = Vec::with_capacity(16 * 4096);
        for n in 1..=self.limit {
            buf.extend_from_slice(&self.numerator(n).to_le_bytes());
            buf.extend_from_slice(&(self.denominator(n) as u64).to_le_bytes());
            if buf.len() >= 16 * 4096 {
                w.write_all(&buf)?;
                buf.clear();
            }
        }
        w.write_all(&buf)?;
        w.flush()
    }

    /// Reads an `HSV1` table and attaches `meta` to it.
    pub fn read_hsv<R: Read>(mut r: R, meta: TableMeta) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)
            .map_err(|_| Error::Format("missing magic".into()))?;
        if &magic != HSV_MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let mut word = [0u8; 8];
        r.read_exact(&mut word)
            .map_err(|_| Error::Format("missing limit".into()))?;
        let limit = u64::from_le_bytes(word);
        if limit == 0 || limit > u64::from(u32::MAX) {
            return Err(Error::Format(format!("implausible limit {limit}")));
        }
        let len = limit as usize + 1;
        let mut nums = super::spf::try_alloc(len, 0i64, limit)?;
        let mut dens: Vec<i64> = Vec::new();
        let mut any_fraction = false;
        let mut pair = [0u8; 16];
        for n in 1..len {
            r.read_exact(&mut pair)
                .map_err(|_| Error::Format(format!("truncated at entry {n}")))?;
            let num = i64::from_le_bytes(pair[..8].try_into().unwrap());
            let den = u64::from_le_bytes(pair[8..].try_into().unwrap());
            if den == 0 || den > i64::MAX as u64 {
                return Err(Error::Format(format!("invalid denominator at entry {n}")));
            }
            nums[n] = num;
            if den != 1 && !any_fraction {
                any_fraction = true;
                dens = super::spf::try_alloc(len, 1i64, limit)?;
            }
            if any_fraction {
                dens[n] = den as i64;
            }
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::Format("trailing bytes after last entry".into()));
        }
        Ok(Self {
            meta,
            limit,
            numerators: nums,
            denominators: any_fraction.then_some(dens),
        })
    }
}
