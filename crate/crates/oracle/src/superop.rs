//! Superoperators on `L(V_n)` as dense `dimV^2 x dimV^2` matrices.
//!
//! Operators are flattened column-major, so `vec(A X B) = (B^T ⊗ A) vec(X)`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::generators::{CMatrix, GeneratorSet};

/// `X -> (1/kappa) sum_mu J_mu X J_mu`.
pub fn twirl_one(gens: &GeneratorSet) -> CMatrix {
    let d = gens.dim();
    let mut out = CMatrix::zeros(d * d, d * d);
    for j in &gens.matrices {
        out += j.transpose().kronecker(j);
    }
    out / Complex64::new(gens.kappa, 0.0)
}

/// `X -> sum_mu [J_mu, [J_mu, X]]`.
pub fn conjugation_casimir(gens: &GeneratorSet) -> CMatrix {
    let d = gens.dim();
    let id = CMatrix::identity(d, d);
    let mut out = CMatrix::zeros(d * d, d * d);
    for j in &gens.matrices {
        let sq = j * j;
        out += id.kronecker(&sq);
        out -= j.transpose().kronecker(j) * Complex64::new(2.0, 0.0);
        out += sq.transpose().kronecker(&id);
    }
    out
}

/// `X -> sum_E E^dagger X E` over the given operator basis.
pub fn twirl_from_basis(basis: &[CMatrix]) -> CMatrix {
    let d = basis.first().map_or(0, |e| e.nrows());
    let mut out = CMatrix::zeros(d * d, d * d);
    for e in basis {
        out += e.transpose().kronecker(&e.adjoint());
    }
    out
}

/// Eigenvalues of a Hermitian matrix, sorted in decreasing order.
pub fn hermitian_spectrum(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Groups a decreasing spectrum into runs separated by gaps larger than `gap`.
/// Returns (mean, multiplicity) per run.
pub fn cluster(sorted_desc: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted_desc.len() {
        if i == sorted_desc.len() || sorted_desc[i - 1] - sorted_desc[i] > gap {
            let run = &sorted_desc[start..i];
            out.push((run.iter().sum::<f64>() / run.len() as f64, run.len()));
            start = i;
        }
    }
    out
}

/// `prod_{c != a} (T - g_c) / (g_a - g_c)`.
pub fn lagrange_projector(t: &CMatrix, grid: &[f64], a: usize) -> CMatrix {
    let dim = t.nrows();
    let id = CMatrix::identity(dim, dim);
    let mut p = id.clone();
    for (c, &gc) in grid.iter().enumerate() {
        if c != a {
            let factor = (t - &id * Complex64::new(gc, 0.0)) / Complex64::new(grid[a] - gc, 0.0);
            p *= factor;
        }
    }
    p
}

/// Orthonormal basis of the column span of `m` under the standard inner
/// product, by Gram-Schmidt with largest-residual pivoting. Columns whose
/// residual drops to `rel_threshold` times the largest initial norm are
/// treated as dependent.
pub fn column_basis(m: &CMatrix, rel_threshold: f64) -> Vec<DVector<Complex64>> {
    let mut cols: Vec<DVector<Complex64>> = m.column_iter().map(|c| c.into_owned()).collect();
    let max_norm = cols.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut basis = Vec::new();
    if max_norm == 0.0 {
        return basis;
    }
    while let Some((idx, norm)) = cols
        .iter()
        .map(|c| c.norm())
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
    {
        if norm <= rel_threshold * max_norm {
            break;
        }
        let e = cols.swap_remove(idx) / Complex64::new(norm, 0.0);
        for c in cols.iter_mut() {
            let overlap = e.dotc(c);
            c.axpy(-overlap, &e, Complex64::new(1.0, 0.0));
        }
        basis.push(e);
    }
    basis
}

/// Unflattens a column-major vector into a `dim x dim` operator.
pub fn unvec(v: &DVector<Complex64>, dim: usize) -> CMatrix {
    CMatrix::from_column_slice(dim, dim, v.as_slice())
}

/// `Tr(A B)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}
