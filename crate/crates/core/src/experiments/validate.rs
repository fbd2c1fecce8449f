use num_bigint::BigInt;
use num_rational::BigRational;

use crate::constants::{
    assemble_main_term, compute_aj, compute_ci, eval_main_term, ConstantEstimate,
    MainTermPolynomial,
};
use crate::error::{Error, Result};
use crate::exact::ratio_to_f64;
use crate::hyperbolic::{sum_blocks, sum_direct, PrefixSumTable};
use crate::sieve::{FunctionTable, TableMeta};

use super::record::{ExperimentRecord, ReportConfig, ValidationKind, ValidationReport, Verdict};

/// Normalized error may grow by at most this factor across a grid.
pub const DEFAULT_TREND_THRESHOLD: f64 = 2.0;

/// Smallest grid point for which `log log x` is comfortably positive.
pub const MIN_THEOREM_GRID_X: u64 = 16;

const THRESHOLD_NOTE: &str =
    "the O-constant is unspecified; the trend threshold is an engineering choice, not a proven bound";

fn check_grid(grid: &[u64], min_x: u64, limit: u64) -> Result<()> {
    let (Some(&first), Some(&last)) = (grid.first(), grid.last()) else {
        return Ok(());
    };
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Contract("grid must be strictly ascending".into()));
    }
    if first < min_x {
        return Err(Error::Domain(format!(
            "grid starts at {first}, minimum is {min_x}"
        )));
    }
    Error::check_range(last, limit)
}

/// Classifies the normalized errors of an ascending grid.
///
/// `bounded` requires both `trend_ratio <= threshold` and
/// `max(top half) <= max(bottom half) * threshold`. On an odd-length grid the
/// median point belongs to both halves.
pub fn judge(records: &[ExperimentRecord], threshold: f64) -> (f64, Option<f64>, Verdict) {
    let mags: Vec<f64> = records.iter().map(|r| r.normalized_error.abs()).collect();
    let max_normalized = mags.iter().copied().fold(0.0, f64::max);
    if mags.len() < 2 || mags.iter().any(|m| !m.is_finite()) {
        return (max_normalized, None, Verdict::Inconclusive);
    }
    let (first, last) = (mags[0], mags[mags.len() - 1]);
    let trend_ratio = if last == 0.0 {
        Some(0.0)
    } else if first == 0.0 {
        None
    } else {
        Some(last / first)
    };
    let n = mags.len();
    let bottom = mags[..n.div_ceil(2)].iter().copied().fold(0.0, f64::max);
    let top = mags[n / 2..].iter().copied().fold(0.0, f64::max);
    let bounded = matches!(trend_ratio, Some(t) if t <= threshold) && top <= bottom * threshold;
    let verdict = if bounded {
        Verdict::Bounded
    } else {
        Verdict::Growing
    };
    (max_normalized, trend_ratio, verdict)
}

fn record(
    x: u64,
    r: u32,
    f_name: &str,
    exact: BigRational,
    main_term: f64,
    envelope: f64,
    envelope_name: &str,
) -> ExperimentRecord {
    let error = ratio_to_f64(&exact) - main_term;
    ExperimentRecord {
        x,
        r,
        f_name: f_name.to_string(),
        exact,
        main_term,
        error,
        normalized_error: error / envelope,
        envelope,
        envelope_name: envelope_name.to_string(),
    }
}

fn finish(config: ReportConfig, records: Vec<ExperimentRecord>) -> ValidationReport {
    let (max_normalized, trend_ratio, verdict) = judge(&records, config.trend_threshold);
    ValidationReport {
        config,
        records,
        max_normalized,
        trend_ratio,
        verdict,
    }
}

/// Main-term polynomial of `S_{f,r}` with `C_0 .. C_{r-1}` truncated at `f.limit()`.
pub fn theorem1_main_term(f: &FunctionTable, r: u32) -> Result<MainTermPolynomial> {
    let a = compute_aj(r)?;
    let c = (0..r)
        .map(|i| compute_ci(f, i, f.limit()))
        .collect::<Result<Vec<_>>>()?;
    assemble_main_term(r, &a, &c)
}

/// Compares exact `S_{f,r}(x)` against the main term on `x_grid`, normalizing by
/// `x (log x)^{r-2} (log log x)^beta`. `r` comes from the `tau_r` prefix table.
pub fn validate_theorem1(
    f: &FunctionTable,
    prefix: &PrefixSumTable,
    x_grid: &[u64],
    threshold: f64,
) -> Result<ValidationReport> {
    let r = prefix
        .piltz_order()
        .ok_or_else(|| Error::Contract(format!("{} is not a tau_r prefix table", prefix.name())))?;
    if r < 2 {
        return Err(Error::Hypothesis(format!("r must be >= 2, got {r}")));
    }
    let beta = f.beta().ok_or_else(|| {
        Error::Hypothesis(format!(
            "{} has no mean-value bound x (log log x)^beta",
            f.name()
        ))
    })?;
    check_grid(x_grid, MIN_THEOREM_GRID_X, f.limit().min(prefix.limit()))?;

    let main = theorem1_main_term(f, r)?;
    let envelope_name = format!("x*(log x)^{}*(log log x)^{}", r - 2, beta);
    let records = x_grid
        .iter()
        .map(|&x| {
            let exact = sum_blocks(f, prefix, x)?.value;
            let xf = x as f64;
            let envelope = xf * xf.ln().powi(r as i32 - 2) * xf.ln().ln().powf(beta);
            Ok(record(
                x,
                r,
                f.name(),
                exact,
                eval_main_term(&main, x),
                envelope,
                &envelope_name,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut constants = main.a.clone();
    constants.extend(main.c.iter().cloned());
    let config = ReportConfig {
        kind: ValidationKind::Theorem1,
        f_name: f.name().to_string(),
        r,
        alpha: f.alpha(),
        beta: Some(beta),
        table_limit: f.limit(),
        grid: x_grid.to_vec(),
        envelope_name,
        trend_threshold: threshold,
        main_term_coefficients: main.b.clone(),
        constants,
        note: THRESHOLD_NOTE.into(),
    };
    Ok(finish(config, records))
}

/// Compares `T_r(x)` against `x P(log x)`, normalizing by `x^{1-1/r} (log x)^{max(r-2, 0)}`.
pub fn validate_tau_formula(
    prefix: &PrefixSumTable,
    x_grid: &[u64],
    threshold: f64,
) -> Result<ValidationReport> {
    let r = prefix
        .piltz_order()
        .ok_or_else(|| Error::Contract(format!("{} is not a tau_r prefix table", prefix.name())))?;
    if r < 2 {
        return Err(Error::Hypothesis(format!("r must be >= 2, got {r}")));
    }
    check_grid(x_grid, 2, prefix.limit())?;
    let a = compute_aj(r)?;
    let coefficients: Vec<f64> = a.iter().map(|c| c.value).collect();
    let poly = MainTermPolynomial {
        r,
        b: coefficients.clone(),
        a: a.clone(),
        c: Vec::new(),
    };
    let log_power = r.saturating_sub(2) as i32;
    let envelope_name = format!("x^(1-1/{r})*(log x)^{log_power}");
    let records = x_grid
        .iter()
        .map(|&x| {
            let xf = x as f64;
            let envelope = xf.powf(1.0 - 1.0 / f64::from(r)) * xf.ln().powi(log_power);
            let exact = BigRational::from_integer(BigInt::from(prefix.get(x)));
            record(
                x,
                r,
                prefix.name(),
                exact,
                eval_main_term(&poly, x),
                envelope,
                &envelope_name,
            )
        })
        .collect();
    let config = ReportConfig {
        kind: ValidationKind::TauFormula,
        f_name: prefix.name().to_string(),
        r,
        alpha: None,
        beta: None,
        table_limit: prefix.limit(),
        grid: x_grid.to_vec(),
        envelope_name,
        trend_threshold: threshold,
        main_term_coefficients: coefficients,
        constants: a,
        note: THRESHOLD_NOTE.into(),
    };
    Ok(finish(config, records))
}

/// Compares `S_f(x) = sum_{n<=x} f(floor(x/n))` against `C_0 x`, normalizing by `x^{3/4}`.
pub fn validate_single_sum(
    f: &FunctionTable,
    x_grid: &[u64],
    threshold: f64,
) -> Result<ValidationReport> {
    check_grid(x_grid, 2, f.limit())?;
    let c0: ConstantEstimate = compute_ci(f, 0, f.limit())?;
    let top = x_grid.last().copied().unwrap_or(1);
    let ones = FunctionTable::from_integers(
        TableMeta {
            piltz_order: Some(1),
            ..TableMeta::new("tau_r(1)")
        },
        vec![1; top as usize + 1],
    )?;
    let envelope_name = "x^(3/4)".to_string();
    let records = x_grid
        .iter()
        .map(|&x| {
            let exact = sum_direct(f, &ones, x)?.value;
            let xf = x as f64;
            Ok(record(
                x,
                1,
                f.name(),
                exact,
                c0.value * xf,
                xf.powf(0.75),
                &envelope_name,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let config = ReportConfig {
        kind: ValidationKind::SingleSum,
        f_name: f.name().to_string(),
        r: 1,
        alpha: f.alpha(),
        beta: f.beta(),
        table_limit: f.limit(),
        grid: x_grid.to_vec(),
        envelope_name,
        trend_threshold: threshold,
        main_term_coefficients: vec![c0.value],
        constants: vec![c0],
        note: THRESHOLD_NOTE.into(),
    };
    Ok(finish(config, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{build_spf, catalog, sieve_tau_r, FunctionName};

    fn rec(x: u64, ne: f64) -> ExperimentRecord {
        ExperimentRecord {
            x,
            r: 2,
            f_name: "t".into(),
            exact: BigRational::from_integer(0.into()),
            main_term: 0.0,
            error: ne,
            normalized_error: ne,
            envelope: 1.0,
            envelope_name: "one".into(),
        }
    }

    #[test]
    fn judge_cases() {
        let flat = [rec(1, 1.0), rec(2, -1.2), rec(3, 0.9), rec(4, 1.1)];
        let (max, trend, v) = judge(&flat, 2.0);
        assert_eq!(max, 1.2);
        assert_eq!(trend, Some(1.1));
        assert_eq!(v, Verdict::Bounded);

        let growing = [rec(1, 1.0), rec(2, 2.0), rec(3, 3.0), rec(4, 4.0)];
        assert_eq!(judge(&growing, 2.0).2, Verdict::Growing);

        // ends low but the top half spikes
        let spike = [rec(1, 1.0), rec(2, 1.0), rec(3, 5.0), rec(4, 1.0)];
        assert_eq!(judge(&spike, 2.0).2, Verdict::Growing);

        // the median of an odd grid counts toward both halves
        let middle_bump = [rec(1, 1.0), rec(2, 4.0), rec(3, 0.7)];
        assert_eq!(judge(&middle_bump, 2.0).2, Verdict::Bounded);
        let late_bump = [
            rec(1, 1.0),
            rec(2, 1.0),
            rec(3, 1.0),
            rec(4, 4.0),
            rec(5, 1.0),
        ];
        assert_eq!(judge(&late_bump, 2.0).2, Verdict::Growing);

        let zeros = [rec(1, 0.0), rec(2, 0.0)];
        assert_eq!(judge(&zeros, 2.0), (0.0, Some(0.0), Verdict::Bounded));

        let from_zero = [rec(1, 0.0), rec(2, 1.0)];
        assert_eq!(judge(&from_zero, 2.0).1, None);
        assert_eq!(judge(&from_zero, 2.0).2, Verdict::Growing);

        assert_eq!(judge(&[rec(1, 1.0)], 2.0).2, Verdict::Inconclusive);
        assert_eq!(judge(&[], 2.0).2, Verdict::Inconclusive);
    }

    #[test]
    fn grid_checks() {
        assert!(check_grid(&[16, 100], 16, 100).is_ok());
        assert!(matches!(
            check_grid(&[15, 100], 16, 100),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            check_grid(&[100, 16], 16, 100),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            check_grid(&[16, 101], 16, 100),
            Err(Error::Range { .. })
        ));
        assert!(check_grid(&[], 16, 100).is_ok());
    }

    #[test]
    fn zero_function_is_bounded() {
        let spf = build_spf(5000).unwrap();
        let zero = FunctionTable::from_integers(
            TableMeta::new("zero").with_growth(0.5, Some(1.0)),
            vec![0; 5001],
        )
        .unwrap();
        for r in 2..=3 {
            let p = PrefixSumTable::new(&sieve_tau_r(&spf, r).unwrap()).unwrap();
            let rep = validate_theorem1(&zero, &p, &[100, 1000, 5000], 2.0).unwrap();
            assert!(rep
                .records
                .iter()
                .all(|r| r.error == 0.0 && r.normalized_error == 0.0));
            assert_eq!(rep.verdict, Verdict::Bounded);
        }
        let rep = validate_single_sum(&zero, &[100, 1000], 2.0).unwrap();
        assert!(rep.records.iter().all(|r| r.error == 0.0));
        assert_eq!(rep.verdict, Verdict::Bounded);
    }

    #[test]
    fn hypothesis_errors() {
        let spf = build_spf(1000).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        let tau = catalog(FunctionName::Tau, &spf).unwrap();
        let p1 = PrefixSumTable::new(&sieve_tau_r(&spf, 1).unwrap()).unwrap();
        let p2 = PrefixSumTable::new(&sieve_tau_r(&spf, 2).unwrap()).unwrap();
        assert!(matches!(
            validate_theorem1(&omega, &p1, &[100], 2.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            validate_theorem1(&tau, &p2, &[100], 2.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            validate_tau_formula(&p1, &[100], 2.0),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            validate_theorem1(&omega, &p2, &[10], 2.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            validate_theorem1(&omega, &p2, &[2000], 2.0),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn tau2_at_100() {
        let spf = build_spf(100).unwrap();
        let p2 = PrefixSumTable::new(&sieve_tau_r(&spf, 2).unwrap()).unwrap();
        let rep = validate_tau_formula(&p2, &[100], 2.0).unwrap();
        let r = &rep.records[0];
        assert_eq!(r.exact, BigRational::from_integer(482.into()));
        let gamma = crate::constants::stieltjes(0).unwrap()[0];
        let main = 100.0 * 100f64.ln() + (2.0 * gamma - 1.0) * 100.0;
        assert!((r.main_term - main).abs() < 1e-10);
        assert!((r.normalized_error - (482.0 - main) / 10.0).abs() < 1e-10);
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn normalized_error_reproduces_error() {
        let spf = build_spf(20_000).unwrap();
        let omega = catalog(FunctionName::Omega, &spf).unwrap();
        let p2 = PrefixSumTable::new(&sieve_tau_r(&spf, 2).unwrap()).unwrap();
        let rep = validate_theorem1(&omega, &p2, &[100, 1000, 10_000, 20_000], 2.0).unwrap();
        for r in &rep.records {
            assert!(r.envelope > 0.0);
            assert!(
                (r.normalized_error * r.envelope - r.error).abs() <= 1e-12 * r.error.abs().max(1.0)
            );
        }
        assert!(rep
            .records
            .windows(2)
            .all(|w| w[0].envelope < w[1].envelope));
        assert_eq!(rep.config.constants.len(), 4);
        assert_eq!(rep.config.main_term_coefficients.len(), 2);
    }
}
