//! Exact LP feasibility for enumerator-style constraints built on the
//! MacWilliams matrix.
//!
//! Variables are `A_0..A_n`; the dual enumerator is the derived vector
//! `B = M A`. The default `enumerator` profile is a convention modelled on the
//! usual quantum weight-enumerator LPs. It is not a theorem about codes, and
//! every constraint can be replaced by switching to the `none` profile and
//! supplying constraints explicitly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Rational};
use crate::sectors::ModelParams;
use crate::transform::MacWilliamsMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "<=" | "≤" => Ok(Self::Le),
            "=" | "==" => Ok(Self::Eq),
            ">=" | "≥" => Ok(Self::Ge),
            other => Err(Error::Parse(format!("unknown relation `{other}`"))),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Le => "<=",
            Self::Eq => "=",
            Self::Ge => ">=",
        })
    }
}

/// `sum_a coeffs[a] * A_a  (relation)  rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(label: impl Into<String>, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Self { label: label.into(), coeffs, relation, rhs }
    }

    /// Parses `"c_0,c_1,...,c_n;rel;rhs"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        let [coeffs, rel, rhs] = parts.as_slice() else {
            return Err(Error::Parse(format!("constraint `{s}` must look like `coeffs;rel;rhs`")));
        };
        let coeffs = coeffs
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(format!("extra: {s}"), coeffs, rel.parse()?, parse_rational(rhs)?))
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `A_0 = 1`, `A >= 0`, `B >= 0`, `B >= A`, and `B_a = A_a` for `1 <= a < distance`.
    Enumerator,
    /// No built-in constraints; only the extras.
    None,
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Enumerator => "enumerator",
            Self::None => "none",
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerator" => Ok(Self::Enumerator),
            "none" => Ok(Self::None),
            other => Err(Error::ProfileUnknown(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpInstance {
    pub params: ModelParams,
    pub distance: u32,
    pub profile: Profile,
    pub extra: Vec<LinearConstraint>,
}

impl LpInstance {
    pub fn new(params: ModelParams, distance: u32, profile: Profile) -> Result<Self> {
        if distance < 1 || distance > params.n() + 1 {
            return Err(Error::InvalidParams(format!(
                "distance must lie in 1..={}",
                params.n() + 1
            )));
        }
        Ok(Self { params, distance, profile, extra: Vec::new() })
    }

    pub fn with_constraint(mut self, c: LinearConstraint) -> Self {
        self.extra.push(c);
        self
    }
}

/// Linear constraints over `A`, together with the matrix that derives `B`.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub params: ModelParams,
    pub profile: Profile,
    pub constraints: Vec<LinearConstraint>,
    transform: Vec<Vec<Rational>>,
}

impl ConstraintSystem {
    pub fn num_vars(&self) -> usize {
        self.params.size()
    }

    /// `B = M A`.
    pub fn dual(&self, a: &[Rational]) -> Vec<Rational> {
        self.transform
            .iter()
            .map(|row| row.iter().zip(a).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Index of the first constraint violated by `a`.
    pub fn first_violated(&self, a: &[Rational]) -> Option<usize> {
        if a.len() != self.num_vars() {
            return Some(0);
        }
        self.constraints.iter().position(|c| !c.holds(a))
    }

    pub fn is_satisfied_by(&self, a: &[Rational]) -> bool {
        self.first_violated(a).is_none()
    }

    /// Checks `y` is a Farkas certificate: sign-feasible multipliers (`>= 0` on
    /// `<=` rows, `<= 0` on `>=` rows, free on equalities) whose combination has
    /// zero left side and a negative right side.
    pub fn is_farkas_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self.constraints.iter().zip(y).all(|(c, w)| match c.relation {
            Relation::Le => !w.is_negative(),
            Relation::Ge => !w.is_positive(),
            Relation::Eq => true,
        });
        let mut combo = vec![Rational::zero(); self.num_vars()];
        let mut rhs = Rational::zero();
        for (c, w) in self.constraints.iter().zip(y) {
            if w.is_zero() {
                continue;
            }
            for (acc, v) in combo.iter_mut().zip(&c.coeffs) {
                *acc += w * v;
            }
            rhs += w * &c.rhs;
        }
        signs_ok && combo.iter().all(Zero::is_zero) && rhs.is_negative()
    }
}

pub fn build_lp(instance: &LpInstance, m: &MacWilliamsMatrix) -> Result<ConstraintSystem> {
    let params = instance.params;
    if m.params() != params {
        return Err(Error::DimensionMismatch(format!(
            "matrix for {:?} but instance for {:?}",
            m.params(),
            params
        )));
    }
    if instance.distance < 1 || instance.distance > params.n() + 1 {
        return Err(Error::InvalidParams(format!("distance must lie in 1..={}", params.n() + 1)));
    }
    let size = params.size();
    let unit = |a: usize| -> Vec<Rational> {
        (0..size).map(|j| if j == a { Rational::one() } else { Rational::zero() }).collect()
    };
    let mut constraints = Vec::new();
    if instance.profile == Profile::Enumerator {
        constraints.push(LinearConstraint::new("A_0 = 1", unit(0), Relation::Eq, Rational::one()));
        for a in 0..size {
            constraints.push(LinearConstraint::new(format!("A_{a} >= 0"), unit(a), Relation::Ge, Rational::zero()));
        }
        for a in 0..size {
            constraints.push(LinearConstraint::new(format!("B_{a} >= 0"), m.row(a).to_vec(), Relation::Ge, Rational::zero()));
        }
        for a in 0..size {
            let mut c = m.row(a).to_vec();
            c[a] -= Rational::one();
            constraints.push(LinearConstraint::new(format!("B_{a} >= A_{a}"), c, Relation::Ge, Rational::zero()));
        }
        for a in 1..instance.distance as usize {
            let mut c = m.row(a).to_vec();
            c[a] -= Rational::one();
            constraints.push(LinearConstraint::new(format!("B_{a} = A_{a}"), c, Relation::Eq, Rational::zero()));
        }
    }
    for c in &instance.extra {
        if c.coeffs.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "constraint `{}` has {} coefficients, expected {size}",
                c.label,
                c.coeffs.len()
            )));
        }
        constraints.push(c.clone());
    }
    Ok(ConstraintSystem {
        params,
        profile: instance.profile,
        constraints,
        transform: m.entries().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Feasible { a: Vec<Rational>, b: Vec<Rational> },
    /// One multiplier per constraint, in constraint order.
    Infeasible { multipliers: Vec<Rational> },
}

impl LpResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible { .. })
    }

    /// Re-checks the certificate against the system in exact arithmetic.
    pub fn verify(&self, system: &ConstraintSystem) -> bool {
        match self {
            Self::Feasible { a, b } => system.is_satisfied_by(a) && system.dual(a) == *b,
            Self::Infeasible { multipliers } => system.is_farkas_certificate(multipliers),
        }
    }
}

/// Serializable form of an [`LpResult`].
#[derive(Debug, Clone, Serialize)]
pub struct LpReport {
    pub status: &'static str,
    pub q: u32,
    pub n: u32,
    pub profile: String,
    pub certificate: CertificateReport,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CertificateReport {
    Point {
        #[serde(rename = "A")]
        a: Vec<String>,
        #[serde(rename = "B")]
        b: Vec<String>,
    },
    Farkas { multipliers: Vec<Multiplier> },
}

#[derive(Debug, Clone, Serialize)]
pub struct Multiplier {
    pub constraint: String,
    pub relation: Relation,
    pub multiplier: String,
}

impl LpReport {
    pub fn new(system: &ConstraintSystem, result: &LpResult) -> Self {
        let profile = match system.profile {
            Profile::Enumerator => "enumerator (configurable convention, not derived from the transform)".to_string(),
            Profile::None => "none".to_string(),
        };
        let fmt_all = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let (status, certificate) = match result {
            LpResult::Feasible { a, b } => ("feasible", CertificateReport::Point { a: fmt_all(a), b: fmt_all(b) }),
            LpResult::Infeasible { multipliers } => (
                "infeasible",
                CertificateReport::Farkas {
                    multipliers: system
                        .constraints
                        .iter()
                        .zip(multipliers)
                        .filter(|(_, w)| !w.is_zero())
                        .map(|(c, w)| Multiplier {
                            constraint: c.label.clone(),
                            relation: c.relation,
                            multiplier: format_rational(w),
                        })
                        .collect(),
                },
            ),
        };
        Self {
            status,
            q: system.params.q(),
            n: system.params.n(),
            profile,
            certificate,
            verified: result.verify(system),
        }
    }
}

/// Dense phase-one tableau over exact rationals.
///
/// Column layout: `x+_j`, `x-_j` for every variable, one slack per
/// inequality, one artificial per row, then the right-hand side.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-one objective, plus minus its value in the last slot.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    first_artificial: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by the lowest basic index.
    fn run(&mut self) {
        let rhs = self.rhs_col();
        loop {
            let Some(enter) = (0..self.first_artificial).find(|&j| self.cost[j].is_negative()) else {
                return;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // Phase one is bounded below by zero, so an improving column always has a pivot.
            let (r, _) = leave.expect("phase-one objective is bounded");
            self.pivot(r, enter);
        }
    }
}

/// Phase-one simplex with Bland's rule. Returns a feasible point or a Farkas
/// certificate, deterministically.
pub fn solve_feasibility(system: &ConstraintSystem) -> LpResult {
    let nv = system.num_vars();
    let rows = system.constraints.len();
    let slacks: Vec<Option<usize>> = {
        let mut next = 2 * nv;
        system
            .constraints
            .iter()
            .map(|c| {
                (c.relation != Relation::Eq).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let first_artificial = 2 * nv + slacks.iter().flatten().count();
    let width = first_artificial + rows + 1;
    let mut tableau_rows = Vec::with_capacity(rows);
    let mut row_sign = Vec::with_capacity(rows);
    for (i, c) in system.constraints.iter().enumerate() {
        let sign = if c.rhs.is_negative() { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); width];
        for (j, v) in c.coeffs.iter().enumerate() {
            row[j] = &sign * v;
            row[nv + j] = -(&sign * v);
        }
        if let Some(s) = slacks[i] {
            let unit = if c.relation == Relation::Le { Rational::one() } else { -Rational::one() };
            row[s] = &sign * unit;
        }
        row[first_artificial + i] = Rational::one();
        row[width - 1] = &sign * &c.rhs;
        tableau_rows.push(row);
        row_sign.push(sign);
    }
    // Reduced costs with every artificial basic: c_j - sum_i row_i[j].
    let mut cost = vec![Rational::zero(); width];
    for row in &tableau_rows {
        for j in 0..first_artificial {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut t = Tableau {
        rows: tableau_rows,
        cost,
        basis: (first_artificial..first_artificial + rows).collect(),
        first_artificial,
    };
    t.run();

    let rhs = t.rhs_col();
    let infeasibility: Rational = t
        .basis
        .iter()
        .zip(&t.rows)
        .filter(|(&b, _)| b >= first_artificial)
        .map(|(_, row)| row[rhs].clone())
        .sum();
    if infeasibility.is_zero() {
        let mut values = vec![Rational::zero(); first_artificial];
        for (&b, row) in t.basis.iter().zip(&t.rows) {
            if b < first_artificial {
                values[b] = row[rhs].clone();
            }
        }
        let a: Vec<Rational> = (0..nv).map(|j| &values[j] - &values[nv + j]).collect();
        let b = system.dual(&a);
        return LpResult::Feasible { a, b };
    }
    // Phase-one duals u_k = sum_i c_{B_i} (B^{-1})_{ik}; the artificial
    // columns of the final tableau hold B^{-1}.
    let multipliers = (0..rows)
        .map(|k| {
            let u: Rational = t
                .basis
                .iter()
                .zip(&t.rows)
                .filter(|(&b, _)| b >= first_artificial)
                .map(|(_, row)| row[first_artificial + k].clone())
                .sum();
            -u * &row_sign[k]
        })
        .collect();
    LpResult::Infeasible { multipliers }
}
