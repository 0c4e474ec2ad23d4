//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pimw_core::exactnum::{big, frac, int, Rational};
use pimw_core::lpbound::{LinearConstraint, Relation};
use pimw_core::pieri::diagonal_support;
use pimw_core::sectors::{racah_weight, sector_dim};
use pimw_core::transform::{
    row_polynomials, verify_detailed_balance, verify_grid, verify_involution, verify_orthogonality, verify_recurrence,
    verify_row_one,
};
use pimw_core::{build_lp, build_matrix, solve_feasibility, LpInstance, LpResult, MacWilliamsMatrix, ModelParams, Profile, SectorTable};
use pimw_oracle::oracle_matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q_SWEEP: std::ops::RangeInclusive<i64> = 2..=6;
const N_SWEEP: std::ops::RangeInclusive<i64> = 0..=30;
const ORACLE_TOL: f64 = 1e-8;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn sweep() -> Vec<(ModelParams, MacWilliamsMatrix)> {
    let mut out = Vec::new();
    for q in Q_SWEEP {
        for n in N_SWEEP {
            let p = ModelParams::new(q, n).unwrap();
            out.push((p, build_matrix(p).unwrap()));
        }
    }
    out
}

fn first_failure<'a>(cases: impl Iterator<Item = (ModelParams, &'a str, bool)>) -> Option<String> {
    let mut count = 0;
    let mut first = None;
    for (p, what, ok) in cases {
        if !ok {
            count += 1;
            first.get_or_insert_with(|| format!("{what} fails at q={} n={}", p.q(), p.n()));
        }
    }
    first.map(|f| format!("{count} failures, first: {f}"))
}

fn c1_involution(matrices: &[(ModelParams, MacWilliamsMatrix)], build_time: Duration) -> Outcome {
    let start = Instant::now();
    let fail = first_failure(matrices.iter().map(|(p, m)| (*p, "M^2 = I", verify_involution(m).passed)));
    let total = build_time + start.elapsed();
    match fail {
        Some(f) => outcome(false, f),
        None => outcome(
            total < Duration::from_secs(120),
            format!("{} cases exact, build + check {}", matrices.len(), secs(total)),
        ),
    }
}

fn c2_orthogonality(matrices: &[(ModelParams, MacWilliamsMatrix)]) -> Outcome {
    let fail = first_failure(matrices.iter().flat_map(|(p, m)| {
        [
            (*p, "M D M^T = D", verify_orthogonality(m).passed),
            (*p, "detailed balance", verify_detailed_balance(m).passed),
        ]
    }));
    match fail {
        Some(f) => outcome(false, f),
        None => outcome(true, format!("{} cases exact", matrices.len())),
    }
}

fn c3_row_one(matrices: &[(ModelParams, MacWilliamsMatrix)]) -> Outcome {
    let fail = first_failure(matrices.iter().flat_map(|(p, m)| {
        [(*p, "row 1 = grid", verify_row_one(m).passed), (*p, "grid = Casimir form", verify_grid(*p).passed)]
    }));
    let with_row_one = matrices.iter().filter(|(p, _)| p.n() >= 1).count();
    match fail {
        Some(f) => outcome(false, f),
        None => outcome(true, format!("{with_row_one} cases with n >= 1 exact (n = 0 has no row 1)")),
    }
}

fn rationals(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| frac(p, q)).collect()
}

fn c4_hand_values() -> Outcome {
    let cases = [
        (1, vec![vec![(1, 2), (1, 2)], vec![(3, 2), (-1, 2)]]),
        (2, vec![vec![(1, 3), (1, 3), (1, 3)], vec![(1, 1), (1, 2), (-1, 2)], vec![(5, 3), (-5, 6), (1, 6)]]),
    ];
    for (n, rows) in cases {
        let m = build_matrix(ModelParams::new(2, n).unwrap()).unwrap();
        let expect: Vec<Vec<Rational>> = rows.iter().map(|r| rationals(r)).collect();
        if m.entries() != expect.as_slice() {
            return outcome(false, format!("(q=2, n={n}) differs from the hand-summed matrix"));
        }
    }
    outcome(true, "(2,1) and (2,2) equal the hand-summed matrices exactly")
}

fn c5_oracle() -> Outcome {
    let set: Vec<(i64, i64)> = (1..=5)
        .map(|n| (2, n))
        .chain((1..=3).map(|n| (3, n)))
        .chain((1..=2).map(|n| (4, n)))
        .collect();
    let start = Instant::now();
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for &(q, n) in &set {
        let r = match oracle_matrix(ModelParams::new(q, n).unwrap(), ORACLE_TOL) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("q={q} n={n}: {e}")),
        };
        let d = &r.deviations;
        worst.0 = worst.0.max(r.max_abs_deviation);
        worst.1 = worst.1.max(d.twirl_spectrum);
        worst.2 = worst.2.max(d.casimir_spectrum);
        if !r.passed || r.max_abs_deviation > ORACLE_TOL || d.twirl_spectrum > ORACLE_TOL || d.casimir_spectrum > ORACLE_TOL {
            return outcome(false, format!("q={q} n={n}: {d:?}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(300),
        format!(
            "{} cases; max |M~ - M| {:.1e}, twirl spectrum {:.1e}, Casimir spectrum {:.1e}; {}",
            set.len(),
            worst.0,
            worst.1,
            worst.2,
            secs(elapsed)
        ),
    )
}

fn c6_recurrence(matrices: &[(ModelParams, MacWilliamsMatrix)]) -> Outcome {
    let fail = first_failure(matrices.iter().map(|(p, m)| (*p, "recurrence", verify_recurrence(m).passed)));
    match fail {
        Some(f) => outcome(false, f),
        None => {
            let nontrivial = matrices.iter().filter(|(p, _)| p.n() >= 1).count();
            outcome(true, format!("{nontrivial} cases with n >= 1: zero residual, every forward coefficient nonzero"))
        }
    }
}

fn c7_degree_and_orthogonality(matrices: &[(ModelParams, MacWilliamsMatrix)]) -> Outcome {
    let mut cases = 0;
    for (p, m) in matrices.iter().filter(|(p, _)| p.n() >= 1) {
        let t = SectorTable::new(*p).unwrap();
        let polys = row_polynomials(m, &t).unwrap();
        for (b, poly) in polys.iter().enumerate() {
            if poly.degree() != Some(b) {
                return outcome(false, format!("q={} n={} b={b}: degree {:?}", p.q(), p.n(), poly.degree()));
            }
        }
        let values: Vec<Vec<Rational>> = polys.iter().map(|poly| t.x.iter().map(|x| poly.eval(x)).collect()).collect();
        let d: Vec<Rational> = t.d.iter().cloned().map(big).collect();
        for b in 0..values.len() {
            for c in b..values.len() {
                let s: Rational = (0..d.len()).map(|a| &d[a] * &values[b][a] * &values[c][a]).sum();
                let expect = if b == c { d[b].clone() } else { int(0) };
                if s != expect {
                    return outcome(false, format!("q={} n={} (b,c)=({b},{c})", p.q(), p.n()));
                }
            }
        }
        cases += 1;
    }
    outcome(true, format!("{cases} cases with n >= 1: deg p_b = b, sum_a d_a p_b p_c = d_b delta_bc"))
}

fn clebsch_gordan_triple(b: u32) -> BTreeSet<u32> {
    // spin b times (spin 0 + spin 1)
    let mut s: BTreeSet<u32> = (b.abs_diff(1)..=b + 1).collect();
    s.insert(b);
    s
}

fn c8_pieri() -> Outcome {
    for q in 2..=6u32 {
        for b in 0..=12u32 {
            let s = diagonal_support(q, b).unwrap();
            if s.iter().any(|&r| r + 1 < b || r > b + 1) {
                return outcome(false, format!("q={q} b={b}: {s:?}"));
            }
            if q == 2 && s != clebsch_gordan_triple(b) {
                return outcome(false, format!("q=2 b={b}: {s:?} vs {:?}", clebsch_gordan_triple(b)));
            }
        }
    }
    outcome(true, "q 2..6, b 0..12 within {b-1, b, b+1}; q = 2 equals the Clebsch-Gordan set")
}

fn c9_weight() -> Outcome {
    let mut count = 0;
    for q in Q_SWEEP {
        for n in N_SWEEP {
            let p = ModelParams::new(q, n).unwrap();
            for a in 0..=n as usize {
                if racah_weight(p, a).unwrap() != big(sector_dim(p, a).unwrap()) {
                    return outcome(false, format!("q={q} n={n} a={a}"));
                }
                count += 1;
            }
        }
    }
    outcome(true, format!("{count} (q, n, a) triples exact"))
}

fn c10_lp() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut feasible, mut infeasible) = (0, 0);
    for q in 2..=4i64 {
        for n in 1..=5i64 {
            let p = ModelParams::new(q, n).unwrap();
            let m = build_matrix(p).unwrap();
            let size = n as usize + 1;

            let base = build_lp(&LpInstance::new(p, 1, Profile::Enumerator).unwrap(), &m).unwrap();
            let r = solve_feasibility(&base);
            if !r.is_feasible() || !r.verify(&base) {
                return outcome(false, format!("distance-1 default profile not feasible at q={q} n={n}"));
            }

            for at in 0..size {
                let mut c = vec![int(0); size];
                c[at] = int(1);
                let mut inst = LpInstance::new(p, 1, Profile::Enumerator).unwrap();
                inst.extra.push(LinearConstraint::new("lo", c.clone(), Relation::Ge, int(1)));
                inst.extra.push(LinearConstraint::new("hi", c, Relation::Le, int(0)));
                let sys = build_lp(&inst, &m).unwrap();
                let r = solve_feasibility(&sys);
                if r.is_feasible() || !r.verify(&sys) {
                    return outcome(false, format!("contradiction on A_{at} not certified at q={q} n={n}"));
                }
            }

            for distance in 1..=n as u32 + 1 {
                for _ in 0..6 {
                    let mut inst = LpInstance::new(p, distance, Profile::Enumerator).unwrap();
                    for _ in 0..rng.gen_range(0..4) {
                        let coeffs = (0..size).map(|_| int(rng.gen_range(-4..=4))).collect();
                        let rel = [Relation::Le, Relation::Eq, Relation::Ge][rng.gen_range(0..3)];
                        let rhs = frac(rng.gen_range(-6..=6), rng.gen_range(1..=3));
                        inst.extra.push(LinearConstraint::new("random", coeffs, rel, rhs));
                    }
                    let sys = build_lp(&inst, &m).unwrap();
                    let r = solve_feasibility(&sys);
                    if !r.verify(&sys) {
                        return outcome(false, format!("unsound certificate at q={q} n={n} d={distance}"));
                    }
                    match &r {
                        LpResult::Feasible { a, b } => {
                            feasible += 1;
                            if m.apply(b).unwrap() != *a {
                                return outcome(false, format!("M B != A at q={q} n={n}"));
                            }
                            for smaller in 1..distance {
                                let mut wider = LpInstance::new(p, smaller, Profile::Enumerator).unwrap();
                                wider.extra = inst.extra.clone();
                                if !build_lp(&wider, &m).unwrap().is_satisfied_by(a) {
                                    return outcome(false, format!("monotonicity fails at q={q} n={n} d={distance}"));
                                }
                            }
                        }
                        LpResult::Infeasible { .. } => infeasible += 1,
                    }
                }
            }
        }
    }
    outcome(
        true,
        format!("{feasible} feasible and {infeasible} infeasible random instances re-verified exactly, plus fixed contradictions"),
    )
}

fn c11_performance() -> Outcome {
    let start = Instant::now();
    let m = build_matrix(ModelParams::new(5, 100).unwrap()).unwrap();
    let elapsed = start.elapsed();
    outcome(
        m.size() == 101 && elapsed < Duration::from_secs(60),
        format!("build_matrix(q=5, n=100) in {}", secs(elapsed)),
    )
}

fn main() {
    let start = Instant::now();
    let matrices = sweep();
    let build_time = start.elapsed();

    let results = [
        ("1", "exact involutivity", c1_involution(&matrices, build_time)),
        ("2", "orthogonality and detailed balance", c2_orthogonality(&matrices)),
        ("3", "row 1 equals the grid, grid equals Casimir form", c3_row_one(&matrices)),
        ("4", "hand values", c4_hand_values()),
        ("5", "oracle agreement", c5_oracle()),
        ("6", "three-term recurrence", c6_recurrence(&matrices)),
        ("7", "degree law and discrete orthogonality", c7_degree_and_orthogonality(&matrices)),
        ("8", "Pieri support", c8_pieri()),
        ("9", "weight identity", c9_weight()),
        ("10", "LP harness soundness", c10_lp()),
        ("11", "performance", c11_performance()),
    ];

    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag}  {name}: {}", o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
