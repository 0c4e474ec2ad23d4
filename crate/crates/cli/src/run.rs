use std::collections::BTreeMap;
use std::io::Write;

use pimw_core::exactnum::{format_rational, to_f64};
use pimw_core::lpbound::{LinearConstraint, LpReport};
use pimw_core::pieri::{diagonal_support, sector_times_f_fstar, weyl_dimension, DynkinLabel};
use pimw_core::transform::{
    matrix_to_csv, verify_column_zero, verify_detailed_balance, verify_grid, verify_involution, verify_orthogonality,
    verify_recurrence, verify_row_one, MatrixDocument,
};
use pimw_core::{build_lp, build_matrix, solve_feasibility, CheckReport, LpInstance, ModelParams, Profile, SectorTable};
use pimw_oracle::OracleError;
use serde::Serialize;
use thiserror::Error;

use crate::args::{Check, Cli, Command, Format, LpArgs, MatrixArgs, OracleArgs, Output, PieriArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Runtime(_) => 1,
        }
    }
}

impl From<pimw_core::Error> for CliError {
    fn from(e: pimw_core::Error) -> Self {
        use pimw_core::Error::*;
        match e {
            InvalidParams(msg) => Self::Usage(msg),
            ProfileUnknown(_) | Parse(_) | DimensionMismatch(_) => Self::Usage(e.to_string()),
            _ => Self::Runtime(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Core(inner) => inner.into(),
            OracleError::CapExceeded { .. } | OracleError::InvalidTolerance => Self::Usage(e.to_string()),
            OracleError::RankMismatch { .. } | OracleError::GridMismatch { .. } => Self::Runtime(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Whether the command's own notion of success held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Matrix(a) => matrix(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => verify(a),
        Command::Pieri(a) => pieri(a),
        Command::Oracle(a) => oracle(a),
        Command::Lp(a) => lp(a),
    }
}

fn emit(out: &Output, body: &str) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Runtime(e.to_string()))
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn json_only(out: &Output, command: &str) -> Result<()> {
    if out.format == Format::Csv {
        return Err(CliError::Usage(format!("{command} output is JSON only")));
    }
    Ok(())
}

fn check_approx(a: &MatrixArgs) -> Result<()> {
    if a.approx && a.out.format == Format::Csv {
        return Err(CliError::Usage("--approx applies to JSON output only".into()));
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct MatrixOutput {
    #[serde(flatten)]
    doc: MatrixDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<MatrixApprox>,
}

#[derive(Serialize)]
struct MatrixApprox {
    entries: Vec<Vec<f64>>,
}

fn matrix(a: MatrixArgs) -> Result<Outcome> {
    check_approx(&a)?;
    let params = ModelParams::new(a.q, a.n)?;
    let m = build_matrix(params)?;
    let body = match a.out.format {
        Format::Csv => matrix_to_csv(&m),
        Format::Json => json(&MatrixOutput {
            doc: MatrixDocument::from_matrix(&m)?,
            approx: a.approx.then(|| MatrixApprox {
                entries: m.entries().iter().map(|r| r.iter().map(to_f64).collect()).collect(),
            }),
        })?,
    };
    emit(&a.out, &body)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct SpectrumOutput {
    q: u32,
    n: u32,
    #[serde(rename = "dimV")]
    dim_v: String,
    d: Vec<String>,
    y: Vec<String>,
    x: Vec<String>,
    #[serde(rename = "cV")]
    c_v: String,
    c: Vec<String>,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<SpectrumApprox>,
}

#[derive(Serialize)]
struct SpectrumApprox {
    x: Vec<f64>,
    #[serde(rename = "cV")]
    c_v: f64,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
}

fn spectrum(a: MatrixArgs) -> Result<Outcome> {
    check_approx(&a)?;
    let params = ModelParams::new(a.q, a.n)?;
    let t = SectorTable::new(params)?;
    let body = match a.out.format {
        Format::Csv => {
            let mut s = String::from("a,d,y,x,c\n");
            for i in 0..params.size() {
                s.push_str(&format!(
                    "{i},{},{},{},{}\n",
                    t.d[i],
                    t.y[i],
                    format_rational(&t.x[i]),
                    format_rational(&t.c[i])
                ));
            }
            s
        }
        Format::Json => json(&SpectrumOutput {
            q: params.q(),
            n: params.n(),
            dim_v: t.dim_v.to_string(),
            d: t.d.iter().map(ToString::to_string).collect(),
            y: t.y.iter().map(ToString::to_string).collect(),
            x: t.x.iter().map(format_rational).collect(),
            c_v: format_rational(&t.c_v),
            c: t.c.iter().map(format_rational).collect(),
            a: format_rational(&t.a),
            b: format_rational(&t.b),
            approx: a.approx.then(|| SpectrumApprox {
                x: t.x.iter().map(to_f64).collect(),
                c_v: to_f64(&t.c_v),
                a: to_f64(&t.a),
                b: to_f64(&t.b),
            }),
        })?,
    };
    emit(&a.out, &body)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct VerifyCase {
    q: u32,
    n: u32,
    passed: bool,
    checks: Vec<CheckReport>,
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    cases: Vec<VerifyCase>,
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let qs = match (&a.q_range, a.q) {
        (Some(r), _) => r.clone(),
        (None, Some(q)) => q..=q,
        (None, None) => return Err(CliError::Usage("give --q or --q-range".into())),
    };
    let ns = match (&a.n_range, a.n) {
        (Some(r), _) => r.clone(),
        (None, Some(n)) => n..=n,
        (None, None) => return Err(CliError::Usage("give --n or --n-range".into())),
    };
    let mut cases = Vec::new();
    for q in qs {
        for n in ns.clone() {
            let params = ModelParams::new(q, n)?;
            let m = build_matrix(params)?;
            let checks: Vec<CheckReport> = a
                .checks
                .iter()
                .map(|c| match c {
                    Check::Inv => verify_involution(&m),
                    Check::Orth => verify_orthogonality(&m),
                    Check::Db => verify_detailed_balance(&m),
                    Check::Recur => verify_recurrence(&m),
                    Check::Grid => verify_grid(params),
                    Check::Col0 => verify_column_zero(&m),
                    Check::Row1 => verify_row_one(&m),
                })
                .collect();
            let passed = checks.iter().all(|c| c.passed);
            cases.push(VerifyCase { q: params.q(), n: params.n(), passed, checks });
        }
    }
    let passed = cases.iter().all(|c| c.passed);
    let body = match a.out.format {
        Format::Csv => {
            let mut s = String::from("q,n,check,passed,violations\n");
            for case in &cases {
                for c in &case.checks {
                    s.push_str(&format!("{},{},{},{},{}\n", case.q, case.n, c.check, c.passed, c.violation_count));
                }
            }
            s
        }
        Format::Json => json(&VerifyOutput { passed, cases })?,
    };
    emit(&a.out, &body)?;
    Ok(if passed { Outcome::Success } else { Outcome::Failure })
}

#[derive(Serialize)]
struct Constituent {
    label: String,
    multiplicity: usize,
    dimension: String,
    /// `r` when the constituent is the diagonal sector `E_r`.
    sector: Option<u32>,
}

#[derive(Serialize)]
struct PieriOutput {
    q: u32,
    b: u32,
    support: Vec<u32>,
    decomposition: Vec<Constituent>,
}

fn pieri(a: PieriArgs) -> Result<Outcome> {
    let q = ModelParams::new(a.q, 0)?.q();
    let support: Vec<u32> = diagonal_support(q, a.b)?.into_iter().collect();
    let mut counts: BTreeMap<DynkinLabel, usize> = BTreeMap::new();
    for label in sector_times_f_fstar(q, a.b) {
        *counts.entry(label).or_default() += 1;
    }
    let decomposition: Vec<Constituent> = counts
        .into_iter()
        .map(|(label, multiplicity)| Constituent {
            label: label.to_string(),
            multiplicity,
            dimension: weyl_dimension(&label).to_string(),
            sector: label.diagonal_index(),
        })
        .collect();
    let body = match a.out.format {
        Format::Csv => {
            let mut s = String::from("label,multiplicity,dimension,sector\n");
            for c in &decomposition {
                let sector = c.sector.map(|r| r.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{},{sector}\n", csv_field(&c.label), c.multiplicity, c.dimension));
            }
            s
        }
        Format::Json => json(&PieriOutput { q, b: a.b, support, decomposition })?,
    };
    emit(&a.out, &body)?;
    Ok(Outcome::Success)
}

fn oracle(a: OracleArgs) -> Result<Outcome> {
    json_only(&a.out, "oracle")?;
    let params = ModelParams::new(a.q, a.n)?;
    let report = pimw_oracle::oracle_matrix_capped(params, a.tol, a.cap)?;
    emit(&a.out, &json(&report)?)?;
    Ok(if report.passed { Outcome::Success } else { Outcome::Failure })
}

fn lp(a: LpArgs) -> Result<Outcome> {
    json_only(&a.out, "lp")?;
    let params = ModelParams::new(a.q, a.n)?;
    let profile: Profile = a.profile.parse()?;
    let mut instance = LpInstance::new(params, a.distance, profile)?;
    for c in &a.constraints {
        instance.extra.push(LinearConstraint::parse(c)?);
    }
    let m = build_matrix(params)?;
    let system = build_lp(&instance, &m)?;
    let result = solve_feasibility(&system);
    let report = LpReport::new(&system, &result);
    emit(&a.out, &json(&report)?)?;
    Ok(if result.is_feasible() && report.verified { Outcome::Success } else { Outcome::Failure })
}
