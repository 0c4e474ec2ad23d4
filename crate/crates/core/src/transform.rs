//! The exact MacWilliams matrix, its structural identities, the row
//! polynomials on the spectral grid and the three-term recurrence.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{big, format_rational, hyp4f3_terminating, int, parse_rational, Rational};
use crate::poly::{LagrangeBasis, Polynomial};
use crate::sectors::{dim_vn, grid_from_casimirs, sector_dims, spectral_grid, ModelParams, SectorTable};

/// Square matrix `M[b][a]`: the scalar by which the `b`-th twirl acts on sector `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct MacWilliamsMatrix {
    params: ModelParams,
    entries: Vec<Vec<Rational>>,
}

impl MacWilliamsMatrix {
    /// Wraps raw entries after checking the shape against `params`.
    pub fn from_entries(params: ModelParams, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let size = params.size();
        if entries.len() != size || entries.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch(format!(
                "matrix for n = {} must be {size}x{size}",
                params.n()
            )));
        }
        Ok(Self { params, entries })
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, b: usize, a: usize) -> &Rational {
        &self.entries[b][a]
    }

    pub fn row(&self, b: usize) -> &[Rational] {
        &self.entries[b]
    }

    /// `B = M A`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.size() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.size(),
                self.size()
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect())
    }
}

/// Normalized Racah value `R_b(y_a)`, equal to 1 at `a = 0`.
pub fn racah_polynomial_value(params: ModelParams, b: usize, a: usize) -> Result<Rational> {
    let n = params.n() as usize;
    if a > n || b > n {
        return Err(Error::InvalidParams(format!("indices ({b}, {a}) out of range 0..={n}")));
    }
    let q = params.q() as i64;
    let (bi, ai, ni) = (b as i64, a as i64, n as i64);
    let num = [int(-bi), int(bi + q - 1), int(-ai), int(ai + q - 1)];
    let den = [int(q - 1), int(-ni), int(ni + q)];
    hyp4f3_terminating(&num, &den, a.min(b) as u64)
}

/// `M[b][a] = d_b / dimV * R_b(y_a)`. The `n = 0` model is `[[1]]`.
pub fn build_matrix(params: ModelParams) -> Result<MacWilliamsMatrix> {
    if params.n() == 0 {
        return MacWilliamsMatrix::from_entries(params, vec![vec![Rational::one()]]);
    }
    let size = params.size();
    let dim = big(dim_vn(params));
    let d = sector_dims(params)?;
    let entries = (0..size)
        .into_par_iter()
        .map(|b| {
            let scale = big(d[b].clone()) / &dim;
            (0..size)
                .map(|a| racah_polynomial_value(params, b, a).map(|r| r * &scale))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MacWilliamsMatrix::from_entries(params, entries)
}

/// One failed instance of an identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub index: Vec<usize>,
    /// Left side minus right side, in `p/q` form.
    pub residual: String,
}

/// Outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// Total number of violating indices.
    pub violation_count: usize,
    /// The first few violations, in index order.
    pub violations: Vec<Violation>,
}

const MAX_WITNESSES: usize = 16;

impl CheckReport {
    fn collect(check: &str, residuals: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Self {
        let mut violations = Vec::new();
        let mut count = 0;
        for (index, r) in residuals {
            if !r.is_zero() {
                count += 1;
                if violations.len() < MAX_WITNESSES {
                    violations.push(Violation { index, residual: format_rational(&r) });
                }
            }
        }
        Self { check: check.to_string(), passed: count == 0, violation_count: count, violations }
    }

    fn failed(check: &str, index: Vec<usize>, why: String) -> Self {
        Self {
            check: check.to_string(),
            passed: false,
            violation_count: 1,
            violations: vec![Violation { index, residual: why }],
        }
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

fn dims_or_report(m: &MacWilliamsMatrix, check: &str) -> std::result::Result<Vec<Rational>, CheckReport> {
    sector_dims(m.params)
        .map(|d| d.into_iter().map(big).collect())
        .map_err(|e| CheckReport::failed(check, vec![], e.to_string()))
}

pub fn mat_mul(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.par_iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &y[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `sum_a d_a M[b][a] M[c][a] = d_b delta_{bc}`.
pub fn verify_orthogonality(m: &MacWilliamsMatrix) -> CheckReport {
    const NAME: &str = "orthogonality";
    let d = match dims_or_report(m, NAME) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let size = m.size();
    let weighted: Vec<Vec<Rational>> = m
        .entries
        .iter()
        .map(|row| row.iter().zip(&d).map(|(v, w)| v * w).collect())
        .collect();
    let residuals: Vec<_> = (0..size)
        .into_par_iter()
        .flat_map_iter(|b| {
            let weighted = &weighted;
            let d = &d;
            (b..size).map(move |c| {
                let s: Rational = (0..size).map(|a| &weighted[b][a] * &m.entries[c][a]).sum();
                let expect = if b == c { d[b].clone() } else { Rational::zero() };
                (vec![b, c], s - expect)
            })
        })
        .collect();
    CheckReport::collect(NAME, residuals)
}

/// `M M = I`.
pub fn verify_involution(m: &MacWilliamsMatrix) -> CheckReport {
    let sq = mat_mul(&m.entries, &m.entries);
    let residuals = sq.into_iter().enumerate().flat_map(|(i, row)| {
        row.into_iter().enumerate().map(move |(j, v)| {
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            (vec![i, j], v - expect)
        })
    });
    CheckReport::collect("involution", residuals)
}

/// `d_a M[b][a] = d_b M[a][b]`.
pub fn verify_detailed_balance(m: &MacWilliamsMatrix) -> CheckReport {
    const NAME: &str = "detailed_balance";
    let d = match dims_or_report(m, NAME) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let size = m.size();
    let residuals = (0..size).flat_map(|a| {
        let d = &d;
        (a + 1..size).map(move |b| {
            (vec![b, a], &d[a] * &m.entries[b][a] - &d[b] * &m.entries[a][b])
        })
    });
    CheckReport::collect(NAME, residuals.collect::<Vec<_>>())
}

/// `M[b][0] = d_b / dimV`.
pub fn verify_column_zero(m: &MacWilliamsMatrix) -> CheckReport {
    const NAME: &str = "column0";
    let d = match dims_or_report(m, NAME) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let dim = big(dim_vn(m.params));
    let residuals: Vec<_> = (0..m.size())
        .map(|b| (vec![b, 0], &m.entries[b][0] - &d[b] / &dim))
        .collect();
    CheckReport::collect(NAME, residuals)
}

/// Row 0 is constant `1/dimV` and row 1 equals the closed-form spectral grid.
pub fn verify_row_one(m: &MacWilliamsMatrix) -> CheckReport {
    const NAME: &str = "row1";
    let dim = big(dim_vn(m.params));
    let mut residuals: Vec<_> = (0..m.size())
        .map(|a| (vec![0, a], &m.entries[0][a] - dim.recip()))
        .collect();
    if m.params.n() >= 1 {
        match spectral_grid(m.params) {
            Ok(g) => residuals.extend(
                g.x.iter().enumerate().map(|(a, x)| (vec![1, a], &m.entries[1][a] - x)),
            ),
            Err(e) => return CheckReport::failed(NAME, vec![], e.to_string()),
        }
    }
    CheckReport::collect(NAME, residuals)
}

/// Closed-form grid against its affine form `A - B y_a` and its Casimir form.
pub fn verify_grid(params: ModelParams) -> CheckReport {
    const NAME: &str = "grid";
    if params.n() == 0 {
        return CheckReport::collect(NAME, Vec::new());
    }
    let (g, casimir) = match (spectral_grid(params), grid_from_casimirs(params)) {
        (Ok(g), Ok(c)) => (g, c),
        (Err(e), _) | (_, Err(e)) => return CheckReport::failed(NAME, vec![], e.to_string()),
    };
    let mut residuals = Vec::new();
    for (a, x) in g.x.iter().enumerate() {
        residuals.push((vec![a, 0], x - (&g.a - &g.b * big(g.y[a].clone()))));
        residuals.push((vec![a, 1], x - &casimir[a]));
        if let Some(next) = g.x.get(a + 1).filter(|next| *next >= x) {
            residuals.push((vec![a, 2], next - x));
        }
    }
    CheckReport::collect(NAME, residuals)
}

/// `D M^T D^{-1}`, the inverse obtained from orthogonality.
pub fn inverse_via_transpose(m: &MacWilliamsMatrix) -> Result<Vec<Vec<Rational>>> {
    let d: Vec<Rational> = sector_dims(m.params)?.into_iter().map(big).collect();
    let size = m.size();
    Ok((0..size)
        .map(|a| (0..size).map(|b| &d[a] * &m.entries[b][a] / &d[b]).collect())
        .collect())
}

fn check_pair(m: &MacWilliamsMatrix, sectors: &SectorTable) -> Result<()> {
    if m.params != sectors.params {
        return Err(Error::DimensionMismatch(format!(
            "matrix for {:?} against sector table for {:?}",
            m.params, sectors.params
        )));
    }
    Ok(())
}

/// Interpolating polynomial through `(x_a, M[b][a])`, coefficients ascending.
pub fn row_polynomial(m: &MacWilliamsMatrix, sectors: &SectorTable, b: usize) -> Result<Polynomial> {
    check_pair(m, sectors)?;
    if b >= m.size() {
        return Err(Error::InvalidParams(format!("row {b} out of range")));
    }
    LagrangeBasis::new(&sectors.x)?.interpolate(m.row(b))
}

/// All row polynomials, sharing one Lagrange basis.
pub fn row_polynomials(m: &MacWilliamsMatrix, sectors: &SectorTable) -> Result<Vec<Polynomial>> {
    check_pair(m, sectors)?;
    let basis = LagrangeBasis::new(&sectors.x)?;
    m.entries.par_iter().map(|row| basis.interpolate(row)).collect()
}

/// Coefficients of `x p_b = f_b p_{b+1} + g_b p_b + h_b p_{b-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients {
    /// `f_b` for `b = 0..n-1`.
    pub forward: Vec<Rational>,
    /// `g_b` for `b = 0..n`.
    pub diagonal: Vec<Rational>,
    /// `h_b` for `b = 1..n`, stored at index `b - 1`.
    pub backward: Vec<Rational>,
}

/// Exact solve of an over-determined system `A z = r`, reporting the first
/// row whose residual does not vanish.
fn solve_consistent(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
) -> std::result::Result<Vec<Rational>, SolveFailure> {
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, v)| r.iter().cloned().chain(std::iter::once(v.clone())).collect())
        .collect();
    // full column rank is required, so column `col` always pivots in row `col`
    for col in 0..unknowns {
        let Some(p) = (col..aug.len()).find(|&i| !aug[i][col].is_zero()) else {
            return Err(SolveFailure::Singular);
        };
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        let pivot = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
    }
    let z: Vec<Rational> = (0..unknowns).map(|i| aug[i][unknowns].clone()).collect();
    for (a, (row, v)) in rows.iter().zip(rhs).enumerate() {
        let lhs: Rational = row.iter().zip(&z).map(|(c, zi)| c * zi).sum();
        if &lhs != v {
            return Err(SolveFailure::Inconsistent(a));
        }
    }
    Ok(z)
}

enum SolveFailure {
    Singular,
    Inconsistent(usize),
}

/// Solves the row recurrence `x_a M[b][a] = f M[b+1][a] + g M[b][a] + h M[b-1][a]`
/// over all columns `a`, row by row, and requires every column to agree.
pub fn extract_recurrence(m: &MacWilliamsMatrix, sectors: &SectorTable) -> Result<RecurrenceCoefficients> {
    check_pair(m, sectors)?;
    let n = m.size() - 1;
    if n == 0 {
        return Err(Error::InvalidParams("recurrence needs n ≥ 1".into()));
    }
    let solved = (0..=n)
        .into_par_iter()
        .map(|b| {
            let mut neighbours = Vec::new();
            if b < n {
                neighbours.push(b + 1);
            }
            neighbours.push(b);
            if b > 0 {
                neighbours.push(b - 1);
            }
            let rows: Vec<Vec<Rational>> = (0..=n)
                .map(|a| neighbours.iter().map(|&r| m.entries[r][a].clone()).collect())
                .collect();
            let rhs: Vec<Rational> = (0..=n).map(|a| &sectors.x[a] * &m.entries[b][a]).collect();
            match solve_consistent(&rows, &rhs) {
                Ok(z) => Ok(z),
                Err(SolveFailure::Singular) => Err(Error::SingularSystem(b)),
                Err(SolveFailure::Inconsistent(a)) => Err(Error::InconsistentRecurrence { b, a }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rec = RecurrenceCoefficients { forward: Vec::new(), diagonal: Vec::new(), backward: Vec::new() };
    for (b, z) in solved.into_iter().enumerate() {
        let mut it = z.into_iter();
        if b < n {
            rec.forward.push(it.next().unwrap());
        }
        rec.diagonal.push(it.next().unwrap());
        if b > 0 {
            rec.backward.push(it.next().unwrap());
        }
    }
    Ok(rec)
}

/// Residuals of the row recurrence with the given coefficients substituted back.
pub fn recurrence_residuals(
    m: &MacWilliamsMatrix,
    sectors: &SectorTable,
    rec: &RecurrenceCoefficients,
) -> CheckReport {
    let n = m.size() - 1;
    let mut residuals = Vec::new();
    for b in 0..=n {
        for a in 0..=n {
            let mut rhs = &rec.diagonal[b] * &m.entries[b][a];
            if b < n {
                rhs += &rec.forward[b] * &m.entries[b + 1][a];
            }
            if b > 0 {
                rhs += &rec.backward[b - 1] * &m.entries[b - 1][a];
            }
            residuals.push((vec![b, a], &sectors.x[a] * &m.entries[b][a] - rhs));
        }
    }
    CheckReport::collect("recurrence", residuals)
}

/// Extraction, closure and nonvanishing of every forward coefficient.
pub fn verify_recurrence(m: &MacWilliamsMatrix) -> CheckReport {
    const NAME: &str = "recurrence";
    if m.params.n() == 0 {
        return CheckReport::collect(NAME, Vec::new());
    }
    let sectors = match SectorTable::new(m.params) {
        Ok(s) => s,
        Err(e) => return CheckReport::failed(NAME, vec![], e.to_string()),
    };
    let rec = match extract_recurrence(m, &sectors) {
        Ok(r) => r,
        Err(Error::InconsistentRecurrence { b, a }) => {
            return CheckReport::failed(NAME, vec![b, a], "inconsistent".into())
        }
        Err(Error::SingularSystem(b)) => return CheckReport::failed(NAME, vec![b], "singular".into()),
        Err(e) => return CheckReport::failed(NAME, vec![], e.to_string()),
    };
    let mut report = recurrence_residuals(m, &sectors, &rec);
    for (b, f) in rec.forward.iter().enumerate() {
        if f.is_zero() {
            report.passed = false;
            report.violation_count += 1;
            if report.violations.len() < MAX_WITNESSES {
                report.violations.push(Violation { index: vec![b, b + 1], residual: "zero forward coefficient".into() });
            }
        }
    }
    report
}

/// JSON document for a matrix; every rational in `p/q` form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub q: u32,
    pub n: u32,
    #[serde(rename = "dimV")]
    pub dim_v: String,
    pub d: Vec<String>,
    /// Empty for `n = 0`, where there is no degree-one twirl.
    pub x: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &MacWilliamsMatrix) -> Result<Self> {
        let params = m.params;
        let x = if params.n() == 0 {
            Vec::new()
        } else {
            spectral_grid(params)?.x.iter().map(format_rational).collect()
        };
        Ok(Self {
            q: params.q(),
            n: params.n(),
            dim_v: dim_vn(params).to_string(),
            d: sector_dims(params)?.iter().map(BigInt::to_string).collect(),
            x,
            entries: m
                .entries
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        })
    }

    pub fn to_matrix(&self) -> Result<MacWilliamsMatrix> {
        let params = ModelParams::new(self.q as i64, self.n as i64)?;
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MacWilliamsMatrix::from_entries(params, entries)
    }
}

/// CSV with header `b\a,0,1,...,n` and one row per `b`.
pub fn matrix_to_csv(m: &MacWilliamsMatrix) -> String {
    let mut out = String::from("b\\a");
    for a in 0..m.size() {
        out.push(',');
        out.push_str(&a.to_string());
    }
    out.push('\n');
    for (b, row) in m.entries.iter().enumerate() {
        out.push_str(&b.to_string());
        for v in row {
            out.push(',');
            out.push_str(&format_rational(v));
        }
        out.push('\n');
    }
    out
}
