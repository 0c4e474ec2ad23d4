use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pimw", version, about = "Exact MacWilliams transform for permutation-invariant qudit codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the exact (n+1)x(n+1) matrix.
    Matrix(MatrixArgs),
    /// Emit sector dimensions, lattice, grid and Casimirs.
    Spectrum(MatrixArgs),
    /// Run exact identity checks, optionally over a range of (q, n).
    Verify(VerifyArgs),
    /// Diagonal sectors reachable from E_b under one adjoint step.
    Pieri(PieriArgs),
    /// Numeric brute-force cross-check of the matrix.
    Oracle(OracleArgs),
    /// Exact LP feasibility with a Farkas certificate on failure.
    Lp(LpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[command(flatten)]
    pub out: Output,
    /// Add a separate floating-point field next to the exact values (JSON only).
    #[arg(long)]
    pub approx: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "q_range")]
    pub q: Option<i64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "n_range")]
    pub n: Option<i64>,
    /// Inclusive range such as `2..6`; overrides --q.
    #[arg(long, value_parser = parse_range)]
    pub q_range: Option<RangeInclusive<i64>>,
    /// Inclusive range such as `0..30`; overrides --n.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "inv,orth,db,recur,grid,col0,row1")]
    pub checks: Vec<Check>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Inv,
    Orth,
    Db,
    Recur,
    Grid,
    Col0,
    Row1,
}

#[derive(Debug, Args)]
pub struct PieriArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long)]
    pub b: u32,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = pimw_oracle::DEFAULT_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, default_value_t = 1)]
    pub distance: u32,
    #[arg(long, default_value = "enumerator")]
    pub profile: String,
    /// `c_0,...,c_n;rel;rhs` with rel one of <=, =, >=. Repeatable.
    #[arg(long = "constraint", allow_hyphen_values = true)]
    pub constraints: Vec<String>,
    #[command(flatten)]
    pub out: Output,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(format!("empty range {lo}..{hi}"));
            }
            Ok(lo..=hi)
        }
        None => parse(s).map(|v| v..=v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6"), Ok(2..=6));
        assert_eq!(parse_range("0..=3"), Ok(0..=3));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
