//! Dense univariate polynomials over the rationals and Lagrange interpolation.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self * (x - root)`.
    pub fn mul_linear(&self, root: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, s: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o * s;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

/// Lagrange basis `l_a(x) = prod_{c != a} (x - x_c) / (x_a - x_c)` on distinct nodes.
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    nodes: Vec<Rational>,
    basis: Vec<Polynomial>,
}

impl LagrangeBasis {
    pub fn new(nodes: &[Rational]) -> Result<Self> {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::DegenerateGrid(i, j));
                }
            }
        }
        let basis = (0..nodes.len())
            .map(|a| {
                let mut num = Polynomial::constant(Rational::one());
                let mut den = Rational::one();
                for (c, xc) in nodes.iter().enumerate() {
                    if c != a {
                        num = num.mul_linear(xc);
                        den *= &nodes[a] - xc;
                    }
                }
                num.scale(&den.recip())
            })
            .collect();
        Ok(Self { nodes: nodes.to_vec(), basis })
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Unique polynomial of degree `< nodes.len()` taking `values[a]` at `nodes[a]`.
    pub fn interpolate(&self, values: &[Rational]) -> Result<Polynomial> {
        if values.len() != self.nodes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                self.nodes.len()
            )));
        }
        let mut p = Polynomial::zero();
        for (l, v) in self.basis.iter().zip(values) {
            p.add_scaled(l, v);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, int};

    #[test]
    fn trims_and_degree() {
        let p = Polynomial::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::new(vec![int(0)]).degree(), None);
    }

    #[test]
    fn eval_horner() {
        // 1 - 2x + 3x^2
        let p = Polynomial::new(vec![int(1), int(-2), int(3)]);
        assert_eq!(p.eval(&frac(1, 2)), frac(3, 4));
    }

    #[test]
    fn basis_is_kronecker() {
        let nodes = vec![int(3), frac(1, 2), int(-2), frac(-7, 3)];
        let lb = LagrangeBasis::new(&nodes).unwrap();
        for (a, l) in lb.basis().iter().enumerate() {
            assert_eq!(l.degree(), Some(3));
            for (c, x) in nodes.iter().enumerate() {
                assert_eq!(l.eval(x), if a == c { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let cubic = Polynomial::new(vec![frac(1, 3), int(0), int(-2), frac(5, 7)]);
        let nodes: Vec<_> = (0..6).map(|i| frac(i * i - 3, 2)).collect();
        let values: Vec<_> = nodes.iter().map(|x| cubic.eval(x)).collect();
        let lb = LagrangeBasis::new(&nodes).unwrap();
        assert_eq!(lb.interpolate(&values).unwrap(), cubic);
    }

    #[test]
    fn repeated_nodes_rejected() {
        let err = LagrangeBasis::new(&[int(1), int(2), int(1)]).unwrap_err();
        assert_eq!(err, Error::DegenerateGrid(0, 2));
    }
}
