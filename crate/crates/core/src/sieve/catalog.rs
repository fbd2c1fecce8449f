use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

use super::additive::{sieve_additive, SQRT_GROWTH_ALPHA};
use super::spf::SpfTable;
use super::table::{FunctionTable, TableMeta};
use super::tau::sieve_tau_r;

/// Built-in arithmetic functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionName {
    /// Number of distinct prime divisors.
    Omega,
    /// Number of prime divisors counted with multiplicity.
    BigOmega,
    /// `sum_{p^a ∥ n} a^k`.
    OmegaK(u32),
    OmegaSq,
    TauTau,
    BigOmegaTau,
    /// `omega(n) / p(n)` with `p(n)` the smallest prime divisor.
    OmegaOverP,
    BigOmegaOverP,
    /// The ordinary divisor count used as `f`.
    Tau,
}

impl FunctionName {
    pub const ALL_FIXED: [FunctionName; 8] = [
        FunctionName::Omega,
        FunctionName::BigOmega,
        FunctionName::OmegaSq,
        FunctionName::TauTau,
        FunctionName::BigOmegaTau,
        FunctionName::OmegaOverP,
        FunctionName::BigOmegaOverP,
        FunctionName::Tau,
    ];

    /// Mean-value exponent: `sum_{n<=x} f(n) << x (log log x)^beta`.
    pub fn beta(self) -> Option<f64> {
        match self {
            FunctionName::OmegaSq => Some(2.0),
            // sum tau(n) ~ x log x; no log-log bound exists
            FunctionName::Tau => None,
            _ => Some(1.0),
        }
    }

    pub fn meta(self) -> TableMeta {
        TableMeta::new(self.to_string()).with_growth(SQRT_GROWTH_ALPHA, self.beta())
    }
}

impl fmt::Display for FunctionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionName::Omega => f.write_str("omega"),
            FunctionName::BigOmega => f.write_str("big_omega"),
            FunctionName::OmegaK(k) => write!(f, "omega_k({k})"),
            FunctionName::OmegaSq => f.write_str("omega_sq"),
            FunctionName::TauTau => f.write_str("tau_tau"),
            FunctionName::BigOmegaTau => f.write_str("big_omega_tau"),
            FunctionName::OmegaOverP => f.write_str("omega_over_p"),
            FunctionName::BigOmegaOverP => f.write_str("big_omega_over_p"),
            FunctionName::Tau => f.write_str("tau"),
        }
    }
}

impl FromStr for FunctionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = match s {
            "omega" => FunctionName::Omega,
            "big_omega" => FunctionName::BigOmega,
            "omega_sq" => FunctionName::OmegaSq,
            "tau_tau" => FunctionName::TauTau,
            "big_omega_tau" => FunctionName::BigOmegaTau,
            "omega_over_p" => FunctionName::OmegaOverP,
            "big_omega_over_p" => FunctionName::BigOmegaOverP,
            "tau" => FunctionName::Tau,
            _ => {
                let k = s
                    .strip_prefix("omega_k(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| Error::UnknownFunction(s.to_string()))?;
                FunctionName::OmegaK(k)
            }
        };
        Ok(name)
    }
}

fn omega_k_weight(k: u32) -> impl FnMut(u32) -> Result<Ratio<i64>> {
    move |a| {
        if a == 0 {
            // g(0) = 0 even for k = 0, so that Omega_0 = omega
            return Ok(Ratio::from_integer(0));
        }
        i64::from(a)
            .checked_pow(k)
            .map(Ratio::from_integer)
            .ok_or_else(|| Error::Overflow(format!("{a}^{k} in omega_k({k})")))
    }
}

fn integer_table(spf: &SpfTable, name: FunctionName) -> Result<FunctionTable> {
    match name {
        FunctionName::Omega => {
            sieve_additive(spf, name.to_string(), omega_k_weight(0), name.beta())
        }
        FunctionName::BigOmega => {
            sieve_additive(spf, name.to_string(), omega_k_weight(1), name.beta())
        }
        FunctionName::OmegaK(k) => {
            sieve_additive(spf, name.to_string(), omega_k_weight(k), name.beta())
        }
        FunctionName::Tau => sieve_tau_r(spf, 2),
        _ => Err(Error::Internal(format!("{name} is not a base table"))),
    }
}

fn map_values(
    base: &FunctionTable,
    meta: TableMeta,
    mut f: impl FnMut(u64, i64) -> i64,
) -> Result<FunctionTable> {
    let base_values = base
        .integers()
        .ok_or_else(|| Error::Internal("base table must be integer valued".into()))?;
    let values = base_values
        .iter()
        .enumerate()
        .map(|(n, &v)| if n == 0 { 0 } else { f(n as u64, v) })
        .collect();
    FunctionTable::from_integers(meta, values)
}

/// Tabulates a built-in function up to `spf.limit()`.
pub fn catalog(name: FunctionName, spf: &SpfTable) -> Result<FunctionTable> {
    let meta = name.meta();
    match name {
        FunctionName::Omega | FunctionName::BigOmega | FunctionName::OmegaK(_) => {
            Ok(integer_table(spf, name)?.with_meta(meta))
        }
        FunctionName::Tau => Ok(integer_table(spf, name)?.with_meta(meta)),
        FunctionName::OmegaSq => {
            let omega = integer_table(spf, FunctionName::Omega)?;
            map_values(&omega, meta, |_, w| w * w)
        }
        FunctionName::TauTau | FunctionName::BigOmegaTau => {
            let tau = integer_table(spf, FunctionName::Tau)?;
            let outer = if name == FunctionName::TauTau {
                tau.clone()
            } else {
                integer_table(spf, FunctionName::BigOmega)?
            };
            // tau(n) <= n, so every lookup stays inside the table
            let inner = tau.integers().expect("tau is integer valued");
            let outer_values = outer.integers().expect("integer valued");
            map_values(&tau, meta, |n, _| outer_values[inner[n as usize] as usize])
        }
        FunctionName::OmegaOverP | FunctionName::BigOmegaOverP => {
            let base_name = if name == FunctionName::OmegaOverP {
                FunctionName::Omega
            } else {
                FunctionName::BigOmega
            };
            let base = integer_table(spf, base_name)?;
            let values = (0..=spf.limit())
                .map(|n| {
                    if n < 2 {
                        Ratio::from_integer(0)
                    } else {
                        Ratio::new(base.numerator(n), i64::from(spf.spf(n)))
                    }
                })
                .collect();
            FunctionTable::from_ratios(meta, values)
        }
    }
}

/// Same as [`catalog`] but takes the function by name.
pub fn catalog_by_name(name: &str, spf: &SpfTable) -> Result<FunctionTable> {
    catalog(name.parse()?, spf)
}
