//! Brute-force numeric construction of the MacWilliams matrix.
//!
//! Builds the su(q) action on `Sym^n(C^q)` directly, assembles the twirl and
//! conjugation-Casimir superoperators densely, and reads the matrix off the
//! spectral projectors. Nothing here uses the closed-form matrix except for the
//! final comparison.

mod basis;
mod error;
mod generators;
pub mod superop;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use pimw_core::exactnum::to_f64;
use pimw_core::{build_matrix, ModelParams, SectorTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use basis::SymBasis;
pub use error::{OracleError, Result};
pub use generators::{build_generators, fundamental_generators, lift, CMatrix, GeneratorSet, DEFAULT_CAP};
pub use superop::{conjugation_casimir, twirl_one};

use superop::{cluster, column_basis, hermitian_spectrum, lagrange_projector, trace_of_product, twirl_from_basis, unvec};

/// Rank threshold for sector-basis extraction, relative to the largest column norm.
pub const RANK_THRESHOLD: f64 = 1e-7;

const SEED: u64 = 0x5eed_f00d;

#[derive(Debug, Clone, Serialize)]
pub struct Deviations {
    pub generators: f64,
    pub kappa: f64,
    pub grid: f64,
    pub twirl_spectrum: f64,
    pub casimir_spectrum: f64,
    pub casimir_relation: f64,
    pub projectors: f64,
    pub basis_independence: f64,
    pub matrix: f64,
}

impl Deviations {
    pub fn max(&self) -> f64 {
        [
            self.generators,
            self.kappa,
            self.grid,
            self.twirl_spectrum,
            self.casimir_spectrum,
            self.casimir_relation,
            self.projectors,
            self.basis_independence,
            self.matrix,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn all_finite(&self) -> bool {
        self.max().is_finite()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub q: u32,
    pub n: u32,
    pub dim_v: usize,
    pub tol: f64,
    pub kappa: f64,
    pub grid: Vec<f64>,
    pub sector_ranks: Vec<usize>,
    pub matrix: Vec<Vec<f64>>,
    pub max_abs_deviation: f64,
    pub deviations: Deviations,
    pub passed: bool,
}

pub fn oracle_matrix(params: ModelParams, tol: f64) -> Result<OracleReport> {
    oracle_matrix_capped(params, tol, DEFAULT_CAP)
}

pub fn oracle_matrix_capped(params: ModelParams, tol: f64, cap: usize) -> Result<OracleReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(OracleError::InvalidTolerance);
    }
    let (q, n) = (params.q() as usize, params.n() as usize);
    let gens = build_generators(q, n, cap)?;
    if n == 0 {
        return Err(pimw_core::Error::InvalidParams("the oracle needs n ≥ 1".into()).into());
    }
    let table = SectorTable::new(params)?;
    let exact = build_matrix(params)?;
    let dim = gens.dim();
    let sectors = n + 1;
    let dims: Vec<usize> = table.d.iter().map(|d| d.to_usize().expect("sector dimension fits")).collect();
    let c_v = to_f64(&table.c_v);
    let kappa_expected = c_v * dim as f64 / (q * q - 1) as f64;

    let t1 = twirl_one(&gens);
    let cas = conjugation_casimir(&gens);

    let spectrum = hermitian_spectrum(&t1);
    let expected_spectrum: Vec<f64> = table
        .x
        .iter()
        .zip(&dims)
        .flat_map(|(x, &d)| std::iter::repeat_n(to_f64(x), d))
        .collect();
    let twirl_spectrum = max_diff(&spectrum, &expected_spectrum);

    let mut cas_spectrum = hermitian_spectrum(&cas);
    cas_spectrum.reverse();
    let expected_cas: Vec<f64> = table
        .c
        .iter()
        .zip(&dims)
        .flat_map(|(c, &d)| std::iter::repeat_n(to_f64(c), d))
        .collect();
    let casimir_spectrum = max_diff(&cas_spectrum, &expected_cas);

    let id = CMatrix::identity(dim * dim, dim * dim);
    let relation = &id * Complex64::new(c_v / gens.kappa, 0.0) - &cas * Complex64::new(0.5 / gens.kappa, 0.0);
    let casimir_relation = (&t1 - relation).camax();

    // grid and projectors come from the measured spectrum alone
    let scale = spectrum.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let runs = cluster(&spectrum, 1e-6 * scale);
    if runs.len() != sectors {
        return Err(OracleError::GridMismatch { expected: sectors, found: runs.len() });
    }
    let grid: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let grid_dev = grid.iter().zip(&table.x).map(|(g, x)| (g - to_f64(x)).abs()).fold(0.0, f64::max);

    let projectors: Vec<CMatrix> = (0..sectors).map(|a| lagrange_projector(&t1, &grid, a)).collect();
    let mut proj_dev = 0.0f64;
    let mut total = CMatrix::zeros(dim * dim, dim * dim);
    for (a, pa) in projectors.iter().enumerate() {
        total += pa;
        // P_b P_a is the adjoint of P_a P_b
        for (b, pb) in projectors.iter().enumerate().skip(a) {
            let prod = pa * pb;
            let dev = if a == b { (prod - pa).camax() } else { prod.camax() };
            proj_dev = proj_dev.max(dev);
        }
    }
    proj_dev = proj_dev.max((total - &id).camax());

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ranks = Vec::with_capacity(sectors);
    let mut twirls = Vec::with_capacity(sectors);
    let mut basis_dev = 0.0f64;
    for (b, pb) in projectors.iter().enumerate() {
        let ops: Vec<CMatrix> = column_basis(pb, RANK_THRESHOLD).iter().map(|v| unvec(v, dim)).collect();
        if ops.len() != dims[b] {
            return Err(OracleError::RankMismatch { sector: b, expected: dims[b], found: ops.len() });
        }
        ranks.push(ops.len());
        let tb = twirl_from_basis(&ops);
        let rotated = rotate(&ops, &random_unitary(ops.len(), &mut rng));
        basis_dev = basis_dev.max((&tb - twirl_from_basis(&rotated)).camax());
        twirls.push(tb);
    }

    let mut matrix = vec![vec![0.0; sectors]; sectors];
    let mut matrix_dev = 0.0f64;
    for b in 0..sectors {
        for a in 0..sectors {
            let v = trace_of_product(&projectors[a], &twirls[b]).re / ranks[a] as f64;
            matrix_dev = matrix_dev.max((v - to_f64(exact.get(b, a))).abs());
            matrix[b][a] = v;
        }
    }

    let deviations = Deviations {
        generators: gens.deviation,
        kappa: (gens.kappa - kappa_expected).abs(),
        grid: grid_dev,
        twirl_spectrum,
        casimir_spectrum,
        casimir_relation,
        projectors: proj_dev,
        basis_independence: basis_dev,
        matrix: matrix_dev,
    };
    let passed = deviations.all_finite() && deviations.max() <= tol;
    Ok(OracleReport {
        q: params.q(),
        n: params.n(),
        dim_v: dim,
        tol,
        kappa: gens.kappa,
        grid,
        sector_ranks: ranks,
        matrix,
        max_abs_deviation: matrix_dev,
        deviations,
        passed,
    })
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Haar-ish unitary from the QR factor of a matrix with uniform entries.
fn random_unitary(k: usize, rng: &mut impl Rng) -> CMatrix {
    let m = CMatrix::from_fn(k, k, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.qr().q()
}

/// `E'_i = sum_j U_ji E_j`, another orthonormal basis of the same span.
fn rotate(ops: &[CMatrix], u: &CMatrix) -> Vec<CMatrix> {
    (0..ops.len())
        .map(|i| {
            let mut acc = CMatrix::zeros(ops[0].nrows(), ops[0].ncols());
            for (j, e) in ops.iter().enumerate() {
                acc += e * u[(j, i)];
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: i64, n: i64) -> ModelParams {
        ModelParams::new(q, n).unwrap()
    }

    #[test]
    fn q2_n1_hand_matrix() {
        let r = oracle_matrix(params(2, 1), 1e-9).unwrap();
        let expect = [[0.5, 0.5], [1.5, -0.5]];
        for b in 0..2 {
            for a in 0..2 {
                assert!((r.matrix[b][a] - expect[b][a]).abs() < 1e-9);
            }
        }
        assert!(r.passed, "{:?}", r.deviations);
        assert_eq!(r.sector_ranks, vec![1, 3]);
    }

    #[test]
    fn ranks_match_sector_dimensions() {
        let r = oracle_matrix(params(3, 2), 1e-8).unwrap();
        assert_eq!(r.sector_ranks, vec![1, 8, 27]);
        assert!(r.passed, "{:?}", r.deviations);
    }

    #[test]
    fn rejects_trivial_and_bad_input() {
        assert!(oracle_matrix(params(2, 0), 1e-8).is_err());
        assert!(matches!(oracle_matrix(params(2, 1), 0.0), Err(OracleError::InvalidTolerance)));
        assert!(matches!(
            oracle_matrix_capped(params(3, 3), 1e-8, 5),
            Err(OracleError::CapExceeded { dim: 10, cap: 5 })
        ));
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(5, &mut rng);
        assert!((u.adjoint() * &u - CMatrix::identity(5, 5)).camax() < 1e-12);
    }
}
