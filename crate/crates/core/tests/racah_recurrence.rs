//! The extracted recurrence against the textbook Racah three-term recurrence
//! `lambda R_b = A_b R_{b+1} - (A_b + C_b) R_b + C_b R_{b-1}`, rescaled by
//! `p_b = d_b / dimV * R_b` and `x = A - B lambda`.
//!
//! Sign check at `b = 0`: the series gives `R_1 - 1 = lambda / A_0`.

use pimw_core::exactnum::{big, int, Rational};
use pimw_core::transform::extract_recurrence;
use pimw_core::{build_matrix, ModelParams, SectorTable};

struct Racah {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    delta: Rational,
}

impl Racah {
    fn new(q: i64, n: i64) -> Self {
        Self { alpha: int(q - 2), beta: int(0), gamma: int(n + q - 1), delta: int(-n - 1) }
    }

    fn a(&self, b: i64) -> Rational {
        let (al, be, ga, de) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        let s = int(b) + al + be;
        (int(b) + al + int(1)) * (&s + int(1)) * (int(b) + be + de + int(1)) * (int(b) + ga + int(1))
            / ((int(2 * b) + al + be + int(1)) * (int(2 * b) + al + be + int(2)))
    }

    fn c(&self, b: i64) -> Rational {
        if b == 0 {
            return int(0);
        }
        let (al, be, ga, de) = (&self.alpha, &self.beta, &self.gamma, &self.delta);
        int(b) * (int(b) + al + be - ga) * (int(b) + al - de) * (int(b) + be)
            / ((int(2 * b) + al + be) * (int(2 * b) + al + be + int(1)))
    }
}

#[test]
fn matches_textbook_racah_recurrence() {
    for q in 2..=6i64 {
        for n in 1..=14i64 {
            let p = ModelParams::new(q, n).unwrap();
            let t = SectorTable::new(p).unwrap();
            let rec = extract_recurrence(&build_matrix(p).unwrap(), &t).unwrap();
            let r = Racah::new(q, n);
            let d: Vec<Rational> = t.d.iter().cloned().map(big).collect();
            for b in 0..=n as usize {
                let (ab, cb) = (r.a(b as i64), r.c(b as i64));
                assert_eq!(rec.diagonal[b], &t.a + &t.b * (&ab + &cb), "diag q={q} n={n} b={b}");
                if b < n as usize {
                    assert_eq!(rec.forward[b], -&t.b * &ab * &d[b] / &d[b + 1], "fwd q={q} n={n} b={b}");
                }
                if b > 0 {
                    assert_eq!(rec.backward[b - 1], -&t.b * &cb * &d[b] / &d[b - 1], "bwd q={q} n={n} b={b}");
                }
            }
        }
    }
}
