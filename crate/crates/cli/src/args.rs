use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hypsum",
    version,
    about = "Exact hyperbolic floor-function sums, their asymptotic constants, and validation runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Directory for cached sieve tables (the HYPSUM_CACHE variable takes precedence)
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Rebuild tables instead of reading or writing the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Blocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Exact S_{f,r}(x) against the main term, normalized by x (log x)^{r-2} (log log x)^beta
    Theorem1,
    /// Divisor sums T_r(x) against x P(log x)
    Tau,
    /// The single sum sum_{n<=x} f(floor(x/n)) against C_0 x
    Single,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve an arithmetic function and print its summatory value
    Sieve {
        /// Function name from the catalog, e.g. omega, big_omega, omega_k(2)
        #[arg(long = "f", value_name = "NAME")]
        f: String,
        /// Table limit (accepts 1e6 notation)
        #[arg(long, value_parser = parse_count)]
        limit: u64,
    },
    /// Evaluate S_{f,r}(x) exactly
    Sum {
        #[arg(long = "f", value_name = "NAME")]
        f: String,
        /// Number of hyperbolic variables
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_parser = parse_count)]
        x: u64,
        /// Table limit; defaults to x
        #[arg(long, value_parser = parse_count)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Method::Blocks)]
        method: Method,
    },
    /// Compute C_i(f) truncated at N, or the coefficients a_j(r) when only --r is given
    #[command(group(ArgGroup::new("target").required(true).args(["f", "r"])))]
    Constants {
        #[arg(long = "f", value_name = "NAME", conflicts_with = "r")]
        f: Option<String>,
        #[arg(long, default_value_t = 0, requires = "f")]
        i: u32,
        /// Truncation point of the series (also the table limit)
        #[arg(long = "N", value_name = "N", value_parser = parse_count, default_value = "1000000", requires = "f")]
        n: u64,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Assemble the main-term polynomial of S_{f,r}
    MainTerm {
        #[arg(long = "f", value_name = "NAME")]
        f: String,
        #[arg(long)]
        r: u32,
        /// Truncation point of the C_i series
        #[arg(long, value_parser = parse_count, default_value = "1000000")]
        limit: u64,
    },
    /// Validate an asymptotic formula on a grid of x values
    Validate {
        #[arg(long, value_enum, default_value_t = Kind::Theorem1)]
        kind: Kind,
        /// Required for theorem1 and single
        #[arg(long = "f", value_name = "NAME")]
        f: Option<String>,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Comma-separated ascending x values, e.g. 1e4,1e5,1e6
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        /// Table limit; defaults to the largest grid point
        #[arg(long, value_parser = parse_count)]
        limit: Option<u64>,
        /// Verdict threshold for the trend heuristic
        #[arg(long, default_value_t = 2.0)]
        threshold: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid(pub Vec<u64>);

/// Parses a non-negative integer, also in scientific notation (`1e6`, `2.5e3`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    // 2^53: beyond this an f64 no longer names a unique integer
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > 9_007_199_254_740_992.0 {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(parse_count)
        .collect::<Result<_, _>>()
        .map(Grid)
}
