//! Per-sector data of the decomposition of the operator space on `Sym^n(C^q)`.
//!
//! Sector `a` (for `0 <= a <= n`) is the irreducible constituent with Dynkin
//! label `(a, 0, ..., 0, a)`. Everything here is a closed form in `q`, `n`, `a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{big, binomial, factorial, int, pochhammer, Rational};

/// Local dimension `q >= 2` and block length `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelParams {
    q: u32,
    n: u32,
}

impl ModelParams {
    pub fn new(q: i64, n: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams("q must be ≥ 2".into()));
        }
        if n < 0 {
            return Err(Error::InvalidParams("n must be ≥ 0".into()));
        }
        if q > u32::MAX as i64 || n > u32::MAX as i64 {
            return Err(Error::InvalidParams("q and n must fit in 32 bits".into()));
        }
        Ok(Self { q: q as u32, n: n as u32 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of sectors, `n + 1`.
    pub fn size(&self) -> usize {
        self.n as usize + 1
    }

    fn qi(&self) -> i64 {
        self.q as i64
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    fn check_sector(&self, a: usize) -> Result<()> {
        if a > self.n as usize {
            return Err(Error::InvalidParams(format!(
                "sector index {a} out of range 0..={}",
                self.n
            )));
        }
        Ok(())
    }
}

/// `dim Sym^n(C^q) = C(n+q-1, n)`.
pub fn dim_vn(params: ModelParams) -> BigInt {
    binomial(params.n as u64 + params.q as u64 - 1, params.n as i64)
}

/// `d_a = (2a+q-1)/(q-1) * C(a+q-2, q-2)^2`.
pub fn sector_dim(params: ModelParams, a: usize) -> Result<BigInt> {
    params.check_sector(a)?;
    let q = params.q as u64;
    let a64 = a as u64;
    let c = binomial(a64 + q - 2, q as i64 - 2);
    let numer = BigInt::from(2 * a64 + q - 1) * &c * &c;
    let (quot, rem) = numer.div_rem(&BigInt::from(q - 1));
    if !rem.is_zero() {
        return Err(Error::NonInteger(format!("{numer}/{}", q - 1)));
    }
    Ok(quot)
}

pub fn sector_dims(params: ModelParams) -> Result<Vec<BigInt>> {
    (0..params.size()).map(|a| sector_dim(params, a)).collect()
}

/// Racah orthogonality weight `(2a+q-1)/(q-1) * ((q-1)_a / a!)^2`.
///
/// Computed from Pochhammer symbols, independently of [`sector_dim`].
pub fn racah_weight(params: ModelParams, a: usize) -> Result<Rational> {
    params.check_sector(a)?;
    let q = params.qi();
    let ai = a as i64;
    let ratio = pochhammer(&int(q - 1), a as u64) / big(factorial(a as u64));
    Ok(int(2 * ai + q - 1) / int(q - 1) * &ratio * &ratio)
}

/// Quadratic lattice `y_a = a(a+q-1)`.
pub fn lattice_point(params: ModelParams, a: usize) -> BigInt {
    let a = a as i64;
    BigInt::from(a * (a + params.qi() - 1))
}

/// Spectrum of the degree-one twirl together with the affine constants
/// `x_a = A - B y_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub x: Vec<Rational>,
    pub y: Vec<BigInt>,
    pub a: Rational,
    pub b: Rational,
}

/// Eigenvalues `x_a` of the degree-one twirl, read directly off the closed form
/// `(q^2-1)/dimV * (1 - q a(a+q-1) / (n(q-1)(n+q)))`. Requires `n >= 1`.
pub fn spectral_grid(params: ModelParams) -> Result<SpectralGrid> {
    if params.n == 0 {
        return Err(Error::InvalidParams(
            "spectral grid needs n ≥ 1 (the n = 0 model has a single sector)".into(),
        ));
    }
    let q = params.qi();
    let n = params.ni();
    let dim = big(dim_vn(params));
    let lead = int(q * q - 1) / &dim;
    let scale = int(n * (q - 1) * (n + q));
    let y: Vec<BigInt> = (0..params.size()).map(|a| lattice_point(params, a)).collect();
    let x = (0..params.size())
        .map(|a| {
            let ai = a as i64;
            &lead * (Rational::one() - int(ai * (ai + q - 1) * q) / &scale)
        })
        .collect();
    let b = &lead * int(q) / &scale;
    Ok(SpectralGrid { x, y, a: lead, b })
}

/// `c_V = n(q-1)(n+q)/q` and `c_a = 2a(a+q-1)`.
pub fn casimirs(params: ModelParams) -> (Rational, Vec<Rational>) {
    let q = params.qi();
    let n = params.ni();
    let cv = int(n * (q - 1) * (n + q)) / int(q);
    let c = (0..params.size())
        .map(|a| {
            let a = a as i64;
            int(2 * a * (a + q - 1))
        })
        .collect();
    (cv, c)
}

/// The grid recomputed from the Casimir values, `(q^2-1)/dimV * (1 - c_a / (2 c_V))`.
pub fn grid_from_casimirs(params: ModelParams) -> Result<Vec<Rational>> {
    if params.n == 0 {
        return Err(Error::InvalidParams("Casimir grid needs n ≥ 1".into()));
    }
    let q = params.qi();
    let (cv, c) = casimirs(params);
    let lead = int(q * q - 1) / big(dim_vn(params));
    let two_cv = int(2) * cv;
    Ok(c.iter().map(|ca| &lead * (Rational::one() - ca / &two_cv)).collect())
}

/// All per-sector scalars for a model with `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorTable {
    pub params: ModelParams,
    pub dim_v: BigInt,
    pub d: Vec<BigInt>,
    pub y: Vec<BigInt>,
    pub x: Vec<Rational>,
    pub c_v: Rational,
    pub c: Vec<Rational>,
    pub a: Rational,
    pub b: Rational,
}

impl SectorTable {
    pub fn new(params: ModelParams) -> Result<Self> {
        let grid = spectral_grid(params)?;
        let (c_v, c) = casimirs(params);
        Ok(Self {
            params,
            dim_v: dim_vn(params),
            d: sector_dims(params)?,
            y: grid.y,
            x: grid.x,
            c_v,
            c,
            a: grid.a,
            b: grid.b,
        })
    }
}
