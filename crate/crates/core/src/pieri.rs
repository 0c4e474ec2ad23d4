//! Pieri rules for SU(q) on Dynkin labels, and the diagonal sectors reachable
//! from `E_b` by one step of the adjoint action.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Highest weight `sum a_i w_i` of SU(q), stored as `q - 1` non-negative labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DynkinLabel(Vec<u32>);

impl DynkinLabel {
    pub fn new(q: u32, labels: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams("q must be ≥ 2".into()));
        }
        if labels.len() != q as usize - 1 {
            return Err(Error::DimensionMismatch(format!(
                "SU({q}) label needs {} entries, got {}",
                q - 1,
                labels.len()
            )));
        }
        Ok(Self(labels))
    }

    fn unit(q: u32, at: &[usize]) -> Self {
        let mut v = vec![0; q as usize - 1];
        for &i in at {
            v[i] += 1;
        }
        Self(v)
    }

    pub fn trivial(q: u32) -> Self {
        Self::unit(q, &[])
    }

    /// `F = (1, 0, ..., 0)`.
    pub fn fundamental(q: u32) -> Self {
        Self::unit(q, &[0])
    }

    /// `F* = (0, ..., 0, 1)`.
    pub fn antifundamental(q: u32) -> Self {
        Self::unit(q, &[q as usize - 2])
    }

    /// `(1, 0, ..., 0, 1)`; for SU(2) this is `(2)`.
    pub fn adjoint(q: u32) -> Self {
        Self::unit(q, &[0, q as usize - 2])
    }

    /// The sector label `E_a = (a, 0, ..., 0, a)`; for SU(2) this is `(2a)`.
    pub fn sector(q: u32, a: u32) -> Self {
        let mut v = vec![0; q as usize - 1];
        v[0] += a;
        v[q as usize - 2] += a;
        Self(v)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> u32 {
        self.0.len() as u32 + 1
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `Some(r)` when the label is the sector `E_r`.
    pub fn diagonal_index(&self) -> Option<u32> {
        let v = &self.0;
        if v.len() == 1 {
            return v[0].is_multiple_of(2).then_some(v[0] / 2);
        }
        let interior_zero = v[1..v.len() - 1].iter().all(|&x| x == 0);
        (interior_zero && v[0] == v[v.len() - 1]).then_some(v[0])
    }

    /// Corresponding partition: `lambda_i = a_i + ... + a_{q-1}`.
    pub fn partition(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .0
            .iter()
            .rev()
            .scan(0, |acc, &a| {
                *acc += a;
                Some(*acc)
            })
            .collect();
        out.reverse();
        out
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `label ⊗ F`: add `e_k - e_{k-1}` for each of the `q` positions, dropping
/// any result with a negative entry.
pub fn tensor_fundamental(label: &DynkinLabel) -> Vec<DynkinLabel> {
    let len = label.0.len();
    let mut out = Vec::with_capacity(len + 1);
    for k in 0..=len {
        let mut v: Vec<i64> = label.0.iter().map(|&a| a as i64).collect();
        if k < len {
            v[k] += 1;
        }
        if k > 0 {
            v[k - 1] -= 1;
        }
        if v.iter().all(|&a| a >= 0) {
            out.push(DynkinLabel(v.into_iter().map(|a| a as u32).collect()));
        }
    }
    out
}

/// `label ⊗ F*`, the mirror image of [`tensor_fundamental`] under reversal of the diagram.
pub fn tensor_antifundamental(label: &DynkinLabel) -> Vec<DynkinLabel> {
    tensor_fundamental(&label.reversed())
        .into_iter()
        .map(|l| l.reversed())
        .collect()
}

/// Constituents of `E_b ⊗ F ⊗ F*`, with multiplicity.
pub fn sector_times_f_fstar(q: u32, b: u32) -> Vec<DynkinLabel> {
    tensor_fundamental(&DynkinLabel::sector(q, b))
        .iter()
        .flat_map(tensor_antifundamental)
        .collect()
}

/// The set of `r` such that `E_r` occurs in `E_b ⊗ F ⊗ F*`.
///
/// Since `F ⊗ F* = 1 ⊕ Ad`, this contains the support of `E_b ⊗ Ad` plus at
/// most `b` itself.
pub fn diagonal_support(q: u32, b: u32) -> Result<BTreeSet<u32>> {
    if q < 2 {
        return Err(Error::InvalidParams("q must be ≥ 2".into()));
    }
    Ok(sector_times_f_fstar(q, b)
        .iter()
        .filter_map(DynkinLabel::diagonal_index)
        .collect())
}

/// Dimension of the irreducible with this label, by the hook-content formula
/// `prod_{cells} (q + content) / hook`.
pub fn weyl_dimension(label: &DynkinLabel) -> BigInt {
    let q = label.rank() as i64;
    let lambda = label.partition();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row as usize {
            let content = j as i64 - i as i64;
            let arm = row as i64 - j as i64 - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r as usize > j).count() as i64;
            num *= BigInt::from(q + content);
            den *= BigInt::from(arm + leg + 1);
        }
    }
    num / den
}
