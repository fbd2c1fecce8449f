use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use hypsum_core::constants::{compute_aj, compute_ci, ConstantEstimate, MainTermPolynomial};
use hypsum_core::experiments::{
    emit_report, theorem1_main_term, validate_single_sum, validate_tau_formula, validate_theorem1,
    ReportFormat, ValidationReport, Verdict,
};
use hypsum_core::hyperbolic::{sum_blocks, sum_direct, PrefixSumTable};
use hypsum_core::sieve::{
    build_spf, catalog, piltz_name, sieve_tau_r, FunctionName, FunctionTable, SpfTable, TableMeta,
};
use hypsum_core::{Error, ExactSum, Result};

use crate::args::{Cli, Command, Common, Format, Kind, Method};
use crate::cache::TableCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Done,
    Growing,
}

pub fn run(cli: Cli) -> Result<Status> {
    let cache = TableCache::resolve(cli.common.cache_dir.clone(), cli.common.no_cache);
    let common = &cli.common;
    match cli.command {
        Command::Sieve { f, limit } => sieve(common, &cache, &f, limit),
        Command::Sum {
            f,
            r,
            x,
            limit,
            method,
        } => sum(common, &cache, &f, r, x, limit.unwrap_or(x), method),
        Command::Constants {
            f: Some(f), i, n, ..
        } => constants_ci(common, &cache, &f, i, n),
        Command::Constants { r: Some(r), .. } => constants_aj(common, r),
        Command::Constants { .. } => Err(Error::Contract("constants needs --f or --r".into())),
        Command::MainTerm { f, r, limit } => main_term(common, &cache, &f, r, limit),
        Command::Validate {
            kind,
            f,
            r,
            grid,
            limit,
            threshold,
        } => {
            let grid = grid.0;
            let limit = limit.unwrap_or_else(|| grid.iter().copied().max().unwrap_or(0));
            validate(
                common,
                &cache,
                kind,
                f.as_deref(),
                r,
                &grid,
                limit,
                threshold,
            )
        }
    }
}

/// Tables over `[1, limit]`, sieved lazily and shared through the cache.
struct Tables<'a> {
    cache: &'a TableCache,
    limit: u64,
    spf: Option<SpfTable>,
}

fn spf_of(slot: &mut Option<SpfTable>, limit: u64) -> Result<&SpfTable> {
    if slot.is_none() {
        *slot = Some(build_spf(limit)?);
    }
    Ok(slot.as_ref().expect("just built"))
}

impl<'a> Tables<'a> {
    fn new(cache: &'a TableCache, limit: u64) -> Self {
        Self {
            cache,
            limit,
            spf: None,
        }
    }

    fn function(&mut self, name: &str) -> Result<FunctionTable> {
        let fname: FunctionName = name.parse()?;
        let limit = self.limit;
        let slot = &mut self.spf;
        self.cache
            .load_or_build(fname.meta(), limit, || catalog(fname, spf_of(slot, limit)?))
    }

    fn tau_r(&mut self, r: u32) -> Result<FunctionTable> {
        if r == 0 {
            return Err(Error::Contract("r must be >= 1".into()));
        }
        let meta = TableMeta {
            piltz_order: Some(r),
            ..TableMeta::new(piltz_name(r))
        };
        let limit = self.limit;
        let slot = &mut self.spf;
        self.cache
            .load_or_build(meta, limit, || sieve_tau_r(spf_of(slot, limit)?, r))
    }
}

fn output(common: &Common) -> Result<Box<dyn Write>> {
    Ok(match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Emits `rows` under `header` as CSV, or `json` as pretty JSON.
fn emit<T: Serialize>(
    common: &Common,
    header: &[&str],
    rows: &[Vec<String>],
    json: &T,
) -> Result<()> {
    let mut out = output(common)?;
    match common.format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, json)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SieveSummary<'a> {
    f: &'a str,
    limit: u64,
    alpha: Option<f64>,
    beta: Option<f64>,
    sum_num: String,
    sum_den: String,
}

fn sieve(common: &Common, cache: &TableCache, f: &str, limit: u64) -> Result<Status> {
    let table = Tables::new(cache, limit).function(f)?;
    let mut acc = ExactSum::new();
    for n in 1..=limit {
        acc.add_scaled(table.numerator(n), table.denominator(n), 1)?;
    }
    let total = acc.to_ratio();
    let summary = SieveSummary {
        f: table.name(),
        limit,
        alpha: table.alpha(),
        beta: table.beta(),
        sum_num: total.numer().to_string(),
        sum_den: total.denom().to_string(),
    };
    let row = vec![
        summary.f.to_string(),
        limit.to_string(),
        opt(summary.alpha),
        opt(summary.beta),
        summary.sum_num.clone(),
        summary.sum_den.clone(),
    ];
    emit(
        common,
        &["f", "limit", "alpha", "beta", "sum_num", "sum_den"],
        &[row],
        &summary,
    )?;
    Ok(Status::Done)
}

#[derive(Serialize)]
struct SumOutput {
    x: u64,
    r: u32,
    f: String,
    method: String,
    exact_num: String,
    exact_den: String,
    approx: f64,
}

fn sum(
    common: &Common,
    cache: &TableCache,
    f: &str,
    r: u32,
    x: u64,
    limit: u64,
    method: Method,
) -> Result<Status> {
    if x == 0 {
        return Err(Error::Domain("x must be >= 1".into()));
    }
    Error::check_range(x, limit)?;
    let mut tables = Tables::new(cache, limit);
    let ftable = tables.function(f)?;
    let weights = tables.tau_r(r)?;
    let result = match method {
        Method::Direct => sum_direct(&ftable, &weights, x)?,
        Method::Blocks => sum_blocks(&ftable, &PrefixSumTable::new(&weights)?, x)?,
    };
    let out = SumOutput {
        x,
        r,
        f: result.f_name.clone(),
        method: result.method.to_string(),
        exact_num: result.value.numer().to_string(),
        exact_den: result.value.denom().to_string(),
        approx: hypsum_core::exact::ratio_to_f64(&result.value),
    };
    let row = vec![
        x.to_string(),
        r.to_string(),
        out.f.clone(),
        out.method.clone(),
        out.exact_num.clone(),
        out.exact_den.clone(),
        out.approx.to_string(),
    ];
    emit(
        common,
        &["x", "r", "f", "method", "exact_num", "exact_den", "approx"],
        &[row],
        &out,
    )?;
    Ok(Status::Done)
}

fn constant_rows(cs: &[ConstantEstimate]) -> Vec<Vec<String>> {
    cs.iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.value.to_string(),
                c.tail_bound.to_string(),
                c.truncation_n.to_string(),
                opt(c.alpha_used),
            ]
        })
        .collect()
}

const CONSTANT_HEADER: [&str; 5] = ["label", "value", "tail_bound", "truncation_n", "alpha_used"];

fn constants_ci(common: &Common, cache: &TableCache, f: &str, i: u32, n: u64) -> Result<Status> {
    let table = Tables::new(cache, n).function(f)?;
    let c = vec![compute_ci(&table, i, n)?];
    emit(common, &CONSTANT_HEADER, &constant_rows(&c), &c)?;
    Ok(Status::Done)
}

fn constants_aj(common: &Common, r: u32) -> Result<Status> {
    let a = compute_aj(r)?;
    emit(common, &CONSTANT_HEADER, &constant_rows(&a), &a)?;
    Ok(Status::Done)
}

fn main_term(common: &Common, cache: &TableCache, f: &str, r: u32, limit: u64) -> Result<Status> {
    let table = Tables::new(cache, limit).function(f)?;
    let p: MainTermPolynomial = theorem1_main_term(&table, r)?;
    let rows: Vec<Vec<String>> = (0..p.b.len())
        .map(|k| {
            vec![
                k.to_string(),
                p.b[k].to_string(),
                p.a[k].value.to_string(),
                p.a[k].tail_bound.to_string(),
                p.c[k].value.to_string(),
                p.c[k].tail_bound.to_string(),
            ]
        })
        .collect();
    emit(common, &["k", "b", "a", "a_tail", "c", "c_tail"], &rows, &p)?;
    Ok(Status::Done)
}

#[allow(clippy::too_many_arguments)]
fn validate(
    common: &Common,
    cache: &TableCache,
    kind: Kind,
    f: Option<&str>,
    r: u32,
    grid: &[u64],
    limit: u64,
    threshold: f64,
) -> Result<Status> {
    let need_f = || f.ok_or_else(|| Error::Contract(format!("--f is required for {kind:?}")));
    if let Some(&top) = grid.iter().max() {
        Error::check_range(top, limit)?;
    }
    let mut tables = Tables::new(cache, limit);
    let report: ValidationReport = match kind {
        Kind::Theorem1 => {
            let ftable = tables.function(need_f()?)?;
            let prefix = PrefixSumTable::new(&tables.tau_r(r)?)?;
            validate_theorem1(&ftable, &prefix, grid, threshold)?
        }
        Kind::Tau => {
            let prefix = PrefixSumTable::new(&tables.tau_r(r)?)?;
            validate_tau_formula(&prefix, grid, threshold)?
        }
        Kind::Single => {
            let ftable = tables.function(need_f()?)?;
            validate_single_sum(&ftable, grid, threshold)?
        }
    };
    let format = match common.format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
    };
    emit_report(&report, format, output(common)?)?;
    Ok(if report.verdict == Verdict::Growing {
        Status::Growing
    } else {
        Status::Done
    })
}
