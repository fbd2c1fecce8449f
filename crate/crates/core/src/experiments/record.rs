use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constants::ConstantEstimate;
use crate::error::Error;

/// One grid point: exact value, main term, and the error normalized by its envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RecordRepr", try_from = "RecordRepr")]
pub struct ExperimentRecord {
    pub x: u64,
    pub r: u32,
    pub f_name: String,
    pub exact: BigRational,
    pub main_term: f64,
    /// `exact - main_term`.
    pub error: f64,
    /// `error / envelope`.
    pub normalized_error: f64,
    pub envelope: f64,
    pub envelope_name: String,
}

// wire form: the exact value travels as two decimal strings
#[derive(Serialize, Deserialize)]
struct RecordRepr {
    x: u64,
    r: u32,
    f: String,
    exact_num: String,
    exact_den: String,
    main_term: f64,
    error: f64,
    normalized_error: f64,
    envelope: f64,
    envelope_name: String,
}

impl From<ExperimentRecord> for RecordRepr {
    fn from(r: ExperimentRecord) -> Self {
        RecordRepr {
            x: r.x,
            r: r.r,
            f: r.f_name,
            exact_num: r.exact.numer().to_string(),
            exact_den: r.exact.denom().to_string(),
            main_term: r.main_term,
            error: r.error,
            normalized_error: r.normalized_error,
            envelope: r.envelope,
            envelope_name: r.envelope_name,
        }
    }
}

impl TryFrom<RecordRepr> for ExperimentRecord {
    type Error = String;

    fn try_from(r: RecordRepr) -> Result<Self, String> {
        let num = BigInt::from_str(&r.exact_num).map_err(|e| format!("exact_num: {e}"))?;
        let den = BigInt::from_str(&r.exact_den).map_err(|e| format!("exact_den: {e}"))?;
        if den == BigInt::from(0) {
            return Err("exact_den is zero".into());
        }
        Ok(ExperimentRecord {
            x: r.x,
            r: r.r,
            f_name: r.f,
            exact: BigRational::new(num, den),
            main_term: r.main_term,
            error: r.error,
            normalized_error: r.normalized_error,
            envelope: r.envelope,
            envelope_name: r.envelope_name,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Growing,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "bounded",
            Verdict::Growing => "growing",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationKind {
    /// `S_{f,r}` against the full double-sum main term.
    Theorem1,
    /// `T_r` against `x P(log x)`.
    TauFormula,
    /// `S_f` against `C_0 x`.
    SingleSum,
}

impl fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationKind::Theorem1 => "theorem1",
            ValidationKind::TauFormula => "tau_formula",
            ValidationKind::SingleSum => "single_sum",
        })
    }
}

impl FromStr for ValidationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "theorem1" => Ok(ValidationKind::Theorem1),
            "tau_formula" | "tau" => Ok(ValidationKind::TauFormula),
            "single_sum" | "single" => Ok(ValidationKind::SingleSum),
            _ => Err(Error::Contract(format!("unknown validation kind `{s}`"))),
        }
    }
}

/// Everything needed to rerun a validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub kind: ValidationKind,
    pub f_name: String,
    pub r: u32,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub table_limit: u64,
    pub grid: Vec<u64>,
    pub envelope_name: String,
    pub trend_threshold: f64,
    /// Main-term coefficients of `x (log x)^k`, lowest power first.
    pub main_term_coefficients: Vec<f64>,
    /// Every constant that entered the main term, with its tail bound.
    pub constants: Vec<ConstantEstimate>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub config: ReportConfig,
    pub records: Vec<ExperimentRecord>,
    pub max_normalized: f64,
    /// `|normalized error|` at the largest `x` over that at the smallest;
    /// `None` when undefined (fewer than two points, or a zero start with a
    /// nonzero end).
    pub trend_ratio: Option<f64>,
    pub verdict: Verdict,
}
