use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{ratio_to_f64, ExactSum};

use super::table::FunctionTable;

/// One grid point of a mean-value check.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanValuePoint {
    pub x: u64,
    /// `sum_{n<=x} f(n)`, exact.
    pub partial_sum: BigRational,
    /// `partial_sum / (x (log log x)^beta)`.
    pub ratio: f64,
}

/// Exact partial sums of `f` at each grid point, normalized by `x (log log x)^beta`.
///
/// Points come back in grid order. `beta` is taken from the table; tables
/// without one are rejected.
pub fn mean_value_check(f: &FunctionTable, x_grid: &[u64]) -> Result<Vec<MeanValuePoint>> {
    let beta = f
        .beta()
        .ok_or_else(|| Error::Contract(format!("{} has no mean-value exponent", f.name())))?;
    if let Some(&bad) = x_grid.iter().find(|&&x| x < 3) {
        return Err(Error::Domain(format!(
            "grid point {bad} < 3 (log log x must be positive)"
        )));
    }
    if let Some(&max) = x_grid.iter().max() {
        f.check_covers(max)?;
    }

    let mut order: Vec<usize> = (0..x_grid.len()).collect();
    order.sort_by_key(|&i| x_grid[i]);

    let mut out: Vec<Option<MeanValuePoint>> = vec![None; x_grid.len()];
    let mut acc = ExactSum::new();
    let mut n = 0u64;
    for i in order {
        let x = x_grid[i];
        while n < x {
            n += 1;
            acc.add_scaled(f.numerator(n), f.denominator(n), 1)?;
        }
        let partial_sum = acc.to_ratio();
        let xf = x as f64;
        let ratio = ratio_to_f64(&partial_sum) / (xf * xf.ln().ln().powf(beta));
        out[i] = Some(MeanValuePoint {
            x,
            partial_sum,
            ratio,
        });
    }
    Ok(out
        .into_iter()
        .map(|p| p.expect("every index visited"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::catalog::{catalog, FunctionName};
    use crate::sieve::spf::build_spf;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn omega_to_ten() {
        let spf = build_spf(100).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        let pts = mean_value_check(&omega, &[10]).unwrap();
        // 0,1,1,1,1,2,1,1,1,2 by direct factorization
        let direct: i64 = (1..=10u64).map(|n| spf_omega(&spf, n)).sum();
        assert_eq!(direct, 11);
        assert_eq!(pts[0].partial_sum, int(11));
        let expected = 11.0 / (10.0 * 10f64.ln().ln());
        assert!((pts[0].ratio - expected).abs() < 1e-14);
    }

    fn spf_omega(spf: &crate::sieve::spf::SpfTable, n: u64) -> i64 {
        spf.factorize(n).len() as i64
    }

    #[test]
    fn big_omega_to_four() {
        let spf = build_spf(10).unwrap();
        let big = catalog(FunctionName::BigOmega, &spf).unwrap();
        assert_eq!(mean_value_check(&big, &[4]).unwrap()[0].partial_sum, int(4));
    }

    #[test]
    fn unsorted_grid_keeps_order() {
        let spf = build_spf(100).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        let pts = mean_value_check(&omega, &[50, 10, 30]).unwrap();
        assert_eq!(
            pts.iter().map(|p| p.x).collect::<Vec<_>>(),
            vec![50, 10, 30]
        );
        assert_eq!(pts[1].partial_sum, int(11));
    }

    #[test]
    fn rational_partial_sums() {
        let spf = build_spf(20).unwrap();
        let op = catalog(FunctionName::OmegaOverP, &spf).unwrap();
        let pts = mean_value_check(&op, &[6]).unwrap();
        // 1/2 + 1/3 + 1/2 + 1/5 + 2/2
        assert_eq!(
            pts[0].partial_sum,
            BigRational::new(BigInt::from(38), BigInt::from(15))
        );
    }

    #[test]
    fn domain_and_range_errors() {
        let spf = build_spf(100).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        assert!(matches!(
            mean_value_check(&omega, &[2, 10]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            mean_value_check(&omega, &[101]),
            Err(Error::Range { .. })
        ));
        let tau = catalog(FunctionName::Tau, &spf).unwrap();
        assert!(matches!(
            mean_value_check(&tau, &[10]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn omega_million_ratio_is_moderate() {
        let spf = build_spf(1_000_000).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        let pts = mean_value_check(&omega, &[1_000, 1_000_000]).unwrap();
        // sum omega = x log log x + B1 x + o(x), B1 ~ 0.2615
        for p in &pts {
            assert!(p.ratio > 1.0 && p.ratio < 1.3, "{p:?}");
        }
    }
}
