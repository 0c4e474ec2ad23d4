use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::SymBasis;
use crate::error::{OracleError, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_CAP: usize = 200;

/// Orthonormal su(q) basis in the defining representation, `Tr(T_mu T_nu) = delta`.
///
/// Order: for each pair `j < k` the symmetric then the antisymmetric
/// off-diagonal generator, then the diagonals `diag(1, ..., 1, -k, 0, ...)/sqrt(k(k+1))`.
pub fn fundamental_generators(q: usize) -> Vec<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(q * q - 1);
    for j in 0..q {
        for k in j + 1..q {
            let mut sym = CMatrix::zeros(q, q);
            sym[(j, k)] = Complex64::new(s, 0.0);
            sym[(k, j)] = Complex64::new(s, 0.0);
            out.push(sym);
            let mut anti = CMatrix::zeros(q, q);
            anti[(j, k)] = Complex64::new(0.0, -s);
            anti[(k, j)] = Complex64::new(0.0, s);
            out.push(anti);
        }
    }
    for k in 1..q {
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut d = CMatrix::zeros(q, q);
        for i in 0..k {
            d[(i, i)] = Complex64::new(1.0 / norm, 0.0);
        }
        d[(k, k)] = Complex64::new(-(k as f64) / norm, 0.0);
        out.push(d);
    }
    out
}

/// `sum_{jk} T_jk a_j^dagger a_k` on the occupation basis.
pub fn lift(t: &CMatrix, basis: &SymBasis) -> CMatrix {
    let dim = basis.len();
    let q = basis.q();
    let mut out = CMatrix::zeros(dim, dim);
    for (col, m) in basis.states().iter().enumerate() {
        for j in 0..q {
            for k in 0..q {
                let coeff = t[(j, k)];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                if j == k {
                    out[(col, col)] += coeff * m[j] as f64;
                    continue;
                }
                if m[k] == 0 {
                    continue;
                }
                let mut target = m.clone();
                target[k] -= 1;
                target[j] += 1;
                let row = basis.index_of(&target).expect("occupation stays in the basis");
                let amp = ((m[k] * (m[j] + 1)) as f64).sqrt();
                out[(row, col)] += coeff * amp;
            }
        }
    }
    out
}

/// The lifted generators `J_mu` on `Sym^n(C^q)` with their measured Dynkin index.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub matrices: Vec<CMatrix>,
    /// Mean of `Tr(J_mu J_mu)`.
    pub kappa: f64,
    /// Largest violation of hermiticity, tracelessness or `Tr(J_mu J_nu) = kappa delta`.
    pub deviation: f64,
}

impl GeneratorSet {
    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.nrows())
    }
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn build_generators(q: usize, n: usize, cap: usize) -> Result<GeneratorSet> {
    let basis = SymBasis::new(q, n);
    if basis.len() > cap {
        return Err(OracleError::CapExceeded { dim: basis.len(), cap });
    }
    let matrices: Vec<CMatrix> = fundamental_generators(q).iter().map(|t| lift(t, &basis)).collect();
    let count = matrices.len() as f64;
    let kappa = matrices.iter().map(|j| trace_product(j, j).re).sum::<f64>() / count;
    let mut deviation = 0.0f64;
    for (mu, j) in matrices.iter().enumerate() {
        deviation = deviation.max((j - j.adjoint()).camax());
        deviation = deviation.max(j.trace().norm());
        for (nu, k) in matrices.iter().enumerate() {
            let expect = if mu == nu { kappa } else { 0.0 };
            deviation = deviation.max((trace_product(j, k) - expect).norm());
        }
    }
    Ok(GeneratorSet { matrices, kappa, deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_is_orthonormal() {
        for q in 2..6 {
            let ts = fundamental_generators(q);
            assert_eq!(ts.len(), q * q - 1);
            for (i, a) in ts.iter().enumerate() {
                assert!((a - a.adjoint()).camax() < 1e-15);
                assert!(a.trace().norm() < 1e-15);
                for (j, b) in ts.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((trace_product(a, b) - expect).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn n_one_lift_is_identity_map() {
        let basis = SymBasis::new(3, 1);
        // basis order (0,0,1), (0,1,0), (1,0,0) reverses the coordinates
        for t in fundamental_generators(3) {
            let j = lift(&t, &basis);
            for r in 0..3 {
                for c in 0..3 {
                    assert!((j[(r, c)] - t[(2 - r, 2 - c)]).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn kappa_values() {
        // kappa = c_V dimV / (q^2 - 1)
        let g = build_generators(2, 1, DEFAULT_CAP).unwrap();
        assert!((g.kappa - 1.0).abs() < 1e-12);
        // c_V = n(q-1)(n+q)/q = 20/3 at q = 3, n = 2, so kappa = (20/3 * 6)/8 = 5
        let g = build_generators(3, 2, DEFAULT_CAP).unwrap();
        assert!((g.kappa - 5.0).abs() < 1e-12);
        assert!(g.deviation < 1e-12);
    }

    #[test]
    fn lift_preserves_commutators() {
        let basis = SymBasis::new(3, 3);
        let ts = fundamental_generators(3);
        for a in &ts {
            for b in &ts {
                let comm = a * b - b * a;
                let lifted = lift(&comm, &basis);
                let (ja, jb) = (lift(a, &basis), lift(b, &basis));
                assert!((&ja * &jb - &jb * &ja - lifted).camax() < 1e-12);
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            build_generators(3, 5, 20),
            Err(OracleError::CapExceeded { dim: 21, cap: 20 })
        ));
    }
}
