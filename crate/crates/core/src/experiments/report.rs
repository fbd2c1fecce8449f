use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::record::ValidationReport;

pub const CSV_HEADER: [&str; 9] = [
    "x",
    "r",
    "f",
    "exact_num",
    "exact_den",
    "main_term",
    "error",
    "normalized_error",
    "envelope",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Contract(format!("unknown report format `{s}`"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

/// Writes the report. CSV carries one row per record; JSON carries the whole
/// report including the configuration echo. Exact values are decimal strings
/// and reals use the shortest round-trip representation.
pub fn emit_report<W: Write>(
    report: &ValidationReport,
    format: ReportFormat,
    out: W,
) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in &report.records {
                w.write_record([
                    r.x.to_string(),
                    r.r.to_string(),
                    r.f_name.clone(),
                    r.exact.numer().to_string(),
                    r.exact.denom().to_string(),
                    r.main_term.to_string(),
                    r.error.to_string(),
                    r.normalized_error.to_string(),
                    r.envelope.to_string(),
                ])?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
    }
    Ok(())
}
