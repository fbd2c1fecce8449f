//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hypsum_core::constants::{compute_aj, compute_ci};
use hypsum_core::experiments::{
    emit_report, validate_tau_formula, validate_theorem1, ReportFormat, Verdict,
};
use hypsum_core::hyperbolic::{sum_blocks, sum_direct, PrefixSumTable};
use hypsum_core::sieve::{
    binomial, build_spf, catalog, mean_value_check, sieve_tau_r, FunctionName, FunctionTable,
    SpfTable,
};

const BIG: u64 = 10_000_000;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<u64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut xs: Vec<u64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as u64)
        .collect();
    xs.dedup();
    xs
}

fn decades(lo_exp: u32, hi_exp: u32) -> Vec<u64> {
    (lo_exp..=hi_exp).map(|e| 10u64.pow(e)).collect()
}

fn time_limit(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("{label} took {elapsed:?}, limit {limit:?}")
    })
}

fn constant_reproduction() -> Outcome {
    let start = Instant::now();
    let spf = build_spf(BIG).map_err(|e| e.to_string())?;
    let omega = catalog(FunctionName::Omega, &spf).map_err(|e| e.to_string())?;
    let c0 = compute_ci(&omega, 0, BIG).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure((c0.value - 0.5918).abs() <= 5e-4, || {
        format!("C_0 = {} outside 0.5918 +- 0.0005", c0.value)
    })?;
    time_limit("sieve + C_0", elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "C_0(omega) = {:.10} (tail {:.2e}) in {elapsed:.2?}",
        c0.value, c0.tail_bound
    ))
}

fn dirichlet_sanity(p2: &PrefixSumTable) -> Outcome {
    let a = compute_aj(2).map_err(|e| e.to_string())?;
    ensure((a[1].value - 1.0).abs() <= 1e-10, || {
        format!("a_1 = {}", a[1].value)
    })?;
    let want = 2.0 * EULER_GAMMA - 1.0;
    ensure((a[0].value - want).abs() <= 1e-10, || {
        format!("a_0 = {} vs {want}", a[0].value)
    })?;
    let xs = log_grid(1e5, 1e7, 400);
    let fit = xs
        .iter()
        .map(|&x| {
            let xf = x as f64;
            (p2.get(x) as f64 - xf * xf.ln()) / xf
        })
        .sum::<f64>()
        / xs.len() as f64;
    ensure((fit - a[0].value).abs() < 5e-4, || {
        format!("regression intercept {fit} vs a_0 {}", a[0].value)
    })?;
    Ok(format!(
        "a_1 = {:.12}, a_0 = {:.12}, regression {fit:.5}",
        a[1].value, a[0].value
    ))
}

fn naive_tuples(f: &FunctionTable, x: u64, r: u32) -> i64 {
    fn go(f: &FunctionTable, x: u64, depth: u32) -> i64 {
        if depth == 0 {
            return f.numerator(x);
        }
        (1..=x).map(|n| go(f, x / n, depth - 1)).sum()
    }
    go(f, x, r)
}

fn evaluator_equivalence() -> Outcome {
    let spf = build_spf(2000).map_err(|e| e.to_string())?;
    let fs: Vec<FunctionTable> = [
        FunctionName::Omega,
        FunctionName::BigOmega,
        FunctionName::OmegaSq,
        FunctionName::Tau,
    ]
    .into_iter()
    .map(|n| catalog(n, &spf))
    .collect::<Result<_, _>>()
    .map_err(|e| e.to_string())?;
    let mut checked = 0usize;
    for r in 1..=3 {
        let weights = sieve_tau_r(&spf, r).map_err(|e| e.to_string())?;
        let prefix = PrefixSumTable::new(&weights).map_err(|e| e.to_string())?;
        for f in &fs {
            for x in 1..=2000 {
                let d = sum_direct(f, &weights, x).map_err(|e| e.to_string())?;
                let b = sum_blocks(f, &prefix, x).map_err(|e| e.to_string())?;
                ensure(d.value == b.value, || {
                    format!(
                        "{} r={r} x={x}: direct {} blocks {}",
                        f.name(),
                        d.value,
                        b.value
                    )
                })?;
                if r >= 2 && x <= 300 {
                    let naive = BigRational::from_integer(naive_tuples(f, x, r).into());
                    ensure(d.value == naive, || {
                        format!("{} r={r} x={x}: direct {} naive {naive}", f.name(), d.value)
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (f, r, x) triples agree exactly"))
}

fn theorem_validation(spf: &SpfTable, p2: &PrefixSumTable) -> Outcome {
    let start = Instant::now();
    let grid = decades(4, 7);
    let mut parts = Vec::new();
    for name in [
        FunctionName::Omega,
        FunctionName::BigOmega,
        FunctionName::OmegaSq,
    ] {
        let f = catalog(name, spf).map_err(|e| e.to_string())?;
        let rep = validate_theorem1(&f, p2, &grid, 2.0).map_err(|e| e.to_string())?;
        let trend = rep.trend_ratio.unwrap_or(f64::INFINITY);
        ensure(rep.verdict == Verdict::Bounded && trend <= 2.0, || {
            format!("{name}: verdict {} trend {trend}", rep.verdict)
        })?;
        parts.push(format!("{name} trend {trend:.3}"));
    }
    time_limit(
        "theorem validation",
        start.elapsed(),
        Duration::from_secs(300),
    )?;
    Ok(parts.join(", "))
}

fn divisor_formula(p2: &PrefixSumTable) -> Outcome {
    let grid = log_grid(1e4, 1e7, 13);
    let rep2 = validate_tau_formula(p2, &grid, 2.0).map_err(|e| e.to_string())?;
    ensure(rep2.max_normalized <= 2.0, || {
        format!("T_2 max normalized {}", rep2.max_normalized)
    })?;
    let spf = build_spf(1_000_000).map_err(|e| e.to_string())?;
    let p3 = PrefixSumTable::new(&sieve_tau_r(&spf, 3).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let rep3 = validate_tau_formula(&p3, &decades(4, 6), 2.0).map_err(|e| e.to_string())?;
    let trend = rep3.trend_ratio.unwrap_or(f64::INFINITY);
    ensure(trend <= 2.0 && rep3.verdict == Verdict::Bounded, || {
        format!("T_3 verdict {} trend {trend}", rep3.verdict)
    })?;
    Ok(format!(
        "T_2 max normalized {:.3}, T_3 trend {trend:.3}",
        rep2.max_normalized
    ))
}

fn tail_validity() -> Outcome {
    let spf = build_spf(400_000).map_err(|e| e.to_string())?;
    let omega = catalog(FunctionName::Omega, &spf).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for i in 0..=2 {
        for n in [1_000u64, 10_000, 100_000] {
            let small = compute_ci(&omega, i, n).map_err(|e| e.to_string())?;
            let big = compute_ci(&omega, i, 4 * n).map_err(|e| e.to_string())?;
            let gap = (small.value - big.value).abs();
            ensure(gap <= small.tail_bound, || {
                format!(
                    "i={i} N={n}: |C(N)-C(4N)| = {gap:.3e} > tail {:.3e}",
                    small.tail_bound
                )
            })?;
            worst = worst.max(gap / small.tail_bound);
        }
    }
    Ok(format!("9 instances, worst gap/tail = {worst:.3}"))
}

fn mean_value(spf: &SpfTable) -> Outcome {
    let grid = decades(4, 7);
    let mut parts = Vec::new();
    for name in [
        FunctionName::Omega,
        FunctionName::BigOmega,
        FunctionName::OmegaK(2),
    ] {
        let f = catalog(name, spf).map_err(|e| e.to_string())?;
        let pts = mean_value_check(&f, &grid).map_err(|e| e.to_string())?;
        let ratios: Vec<f64> = pts.iter().map(|p| p.ratio).collect();
        let trend = ratios[ratios.len() - 1] / ratios[0];
        let half = ratios.len() / 2;
        let low = ratios[..half].iter().cloned().fold(0.0, f64::max);
        let high = ratios[half..].iter().cloned().fold(0.0, f64::max);
        ensure(trend <= 1.5 && high <= 1.5 * low, || {
            format!("{name}: ratios {ratios:?}")
        })?;
        parts.push(format!("{name} trend {trend:.3}"));
    }
    Ok(parts.join(", "))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn property_suites() -> Outcome {
    let limit = 1_000_000;
    let spf = build_spf(limit).map_err(|e| e.to_string())?;
    let taus: Vec<FunctionTable> = (1..=5)
        .map(|r| sieve_tau_r(&spf, r))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let additive: Vec<FunctionTable> = [
        FunctionName::Omega,
        FunctionName::BigOmega,
        FunctionName::OmegaK(2),
    ]
    .into_iter()
    .map(|n| catalog(n, &spf))
    .collect::<Result<_, _>>()
    .map_err(|e| e.to_string())?;

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut pairs = 0;
    while pairs < 10_000 {
        let m = rng.gen_range(1..=1000u64);
        let n = rng.gen_range(1..=1000u64);
        if gcd(m, n) != 1 {
            continue;
        }
        pairs += 1;
        for t in &taus {
            ensure(
                t.numerator(m * n) == t.numerator(m) * t.numerator(n),
                || format!("{} not multiplicative at ({m}, {n})", t.name()),
            )?;
        }
        for f in &additive {
            ensure(
                f.numerator(m * n) == f.numerator(m) + f.numerator(n),
                || format!("{} not additive at ({m}, {n})", f.name()),
            )?;
        }
    }

    let mut prime_powers = 0;
    for p in 2..=limit {
        if !spf.is_prime(p) {
            continue;
        }
        let (mut q, mut a) = (p, 1u64);
        while q <= limit {
            for (t, r) in taus.iter().zip(1u64..) {
                let want = binomial(a + r - 1, r - 1).unwrap();
                ensure(t.numerator(q) as u128 == want, || {
                    format!("tau_{r}({p}^{a}) = {} vs {want}", t.numerator(q))
                })?;
            }
            prime_powers += 1;
            q *= p;
            a += 1;
        }
    }
    Ok(format!(
        "{pairs} coprime pairs, {prime_powers} prime powers x 5 orders"
    ))
}

fn performance_floor() -> Outcome {
    let start = Instant::now();
    let spf = build_spf(BIG).map_err(|e| e.to_string())?;
    let omega = catalog(FunctionName::Omega, &spf).map_err(|e| e.to_string())?;
    let p2 = PrefixSumTable::new(&sieve_tau_r(&spf, 2).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    compute_ci(&omega, 0, BIG).map_err(|e| e.to_string())?;
    compute_ci(&omega, 1, BIG).map_err(|e| e.to_string())?;
    let s = sum_blocks(&omega, &p2, BIG).map_err(|e| e.to_string())?;
    let rep = validate_theorem1(&omega, &p2, &decades(4, 7), 2.0).map_err(|e| e.to_string())?;
    let mut sink = Vec::new();
    emit_report(&rep, ReportFormat::Csv, &mut sink).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(!sink.is_empty(), || "empty report".into())?;
    time_limit("pipeline", elapsed, Duration::from_secs(120))?;
    Ok(format!("S(1e7) = {} in {elapsed:.2?}", s.value))
}

fn main() -> ExitCode {
    let spf = build_spf(BIG).expect("sieve to 1e7");
    let p2 = PrefixSumTable::new(&sieve_tau_r(&spf, 2).expect("tau_2")).expect("prefix");

    let criteria: Vec<Criterion> = vec![
        ("1 constant reproduction", Box::new(constant_reproduction)),
        (
            "2 dirichlet divisor sanity",
            Box::new(|| dirichlet_sanity(&p2)),
        ),
        ("3 evaluator equivalence", Box::new(evaluator_equivalence)),
        (
            "4 theorem validation",
            Box::new(|| theorem_validation(&spf, &p2)),
        ),
        ("5 divisor formula", Box::new(|| divisor_formula(&p2))),
        ("6 tail validity", Box::new(tail_validity)),
        ("7 mean value", Box::new(|| mean_value(&spf))),
        ("8 property suites", Box::new(property_suites)),
        ("9 performance floor", Box::new(performance_floor)),
    ];

    let mut failures = 0;
    for (label, run) in &criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {label}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {label}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
