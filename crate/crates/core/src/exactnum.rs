//! Exact rational arithmetic and the terminating `4F3` kernel.
//!
//! [`Rational`] is `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. The text form used by every emitter is
//! `p/q` with the sign on the numerator, or just `p` when the denominator is 1.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num/den` in lowest terms. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Canonical text form: `p/q`, or `p` for integers (`0` for zero).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = Rational::from_str(t).map_err(|e| Error::Parse(format!("`{t}`: {e}")))?;
    if parsed.denom().is_zero() {
        return Err(Error::Parse(format!("`{t}`: zero denominator")));
    }
    Ok(parsed)
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient `C(m, k)`, zero outside `0 <= k <= m`.
pub fn binomial(m: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > m {
        return BigInt::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (m - i) is divisible by (i + 1) at every step
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rising factorial `z (z+1) ... (z+k-1)`.
pub fn pochhammer(z: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = z.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// Sum of the terminating series
/// `sum_{k=0}^{kmax} prod (num_j)_k / (prod (den_j)_k * k!)` at unit argument.
///
/// Terms are generated through the ratio `t_{k+1} / t_k`. Once a numerator
/// factor vanishes every later term is zero and the sum stops, so a vanishing
/// denominator past that point is never touched. The sum is then folded
/// Horner-style, `1 + r_1 (1 + r_2 (1 + ...))`, over an unreduced
/// numerator/denominator pair and reduced once at the end.
pub fn hyp4f3_terminating(num: &[Rational; 4], den: &[Rational; 3], kmax: u64) -> Result<Rational> {
    let mut ratios = Vec::new();
    for k in 0..kmax {
        let shift = Rational::from_integer(BigInt::from(k));
        let mut up = Rational::one();
        for p in num {
            up *= p + &shift;
        }
        if up.is_zero() {
            break;
        }
        let mut down = Rational::from_integer(BigInt::from(k + 1));
        for p in den {
            down *= p + &shift;
        }
        if down.is_zero() {
            return Err(Error::ZeroDenominator { k: k + 1 });
        }
        ratios.push(up / down);
    }
    let mut n = BigInt::one();
    let mut d = BigInt::one();
    for r in ratios.iter().rev() {
        // 1 + r * n/d
        let rd = r.denom() * &d;
        n = &rd + r.numer() * &n;
        d = rd;
    }
    Ok(Rational::new(n, d))
}
