//! Regression table of the published examples.

use std::fmt;

use serde::Serialize;

use super::{analyze_quotient, QuotientSpec};
use crate::error::Error;
use crate::linalg::AbelianGroupStructure;
use crate::modules::{torsion_bound, Filtration, ModuleKind};
use crate::FiniteQuotient;

#[derive(Clone, Debug, Serialize)]
pub struct GoldenCheck {
    pub case: String,
    pub quantity: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub checks: Vec<GoldenCheck>,
    pub passed: bool,
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<28} {:<22} expected {:<22} got {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.case,
                c.quantity,
                c.expected,
                c.got
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// `(D, M', |pi_1|, sm)` for the random-matrix examples.
type MatrixCase = ([i64; 3], [[i64; 3]; 3], u64, &'static [u64]);

pub const MAX_LENGTH_CASES: [MatrixCase; 9] = [
    ([1, 8, 8], [[4, 7, 1], [1, 0, 0], [0, 1, 0]], 2, &[2, 2, 2, 2, 2, 2, 4]),
    ([1, 8, 8], [[0, 3, 1], [1, 0, 0], [0, 1, 0]], 1, &[2, 2, 2, 4]),
    ([1, 8, 16], [[4, 1, -1], [1, 1, 0], [1, 0, 0]], 2, &[2, 2, 2, 4, 4, 4, 4]),
    ([1, 8, 16], [[6, 1, 2], [1, 0, 1], [0, 0, 1]], 4, &[2, 4, 4, 4, 4, 8]),
    ([1, 8, 16], [[1, 0, 3], [0, 1, 1], [0, 0, 1]], 1, &[4, 4, 4, 4]),
    ([1, 9, 9], [[-3, 1, 2], [1, 0, 0], [0, 0, 1]], 3, &[3, 3, 3, 3, 3, 9]),
    ([1, 9, 9], [[-1, 1, 1], [0, 1, 1], [0, 0, 1]], 1, &[3, 3, 9]),
    ([2, 9, 9], [[-4, 2, 1], [-3, 1, 0], [1, 0, 1]], 3, &[3, 3, 3, 3, 3, 3, 9]),
    ([2, 9, 9], [[3, 2, 0], [1, 1, 0], [3, 0, -1]], 1, &[3, 3, 3, 9]),
];

pub const PRIME_TO_SIX_CASES: [MatrixCase; 4] = [
    ([1, 5, 25], [[2, -1, 6], [1, 0, 1], [0, 0, 1]], 5, &[5, 5, 5, 5, 5, 5]),
    ([1, 5, 25], [[2, 0, -1], [4, 1, -1], [1, 0, 0]], 1, &[5, 5, 5]),
    ([1, 7, 7], [[1, 2, 5], [0, 0, 1], [1, 1, 0]], 7, &[7, 7, 7, 7, 7, 7]),
    ([1, 7, 7], [[1, 0, 2], [1, 0, 1], [3, 1, 0]], 1, &[7, 7, 7]),
];

/// Diagonal quotients and the expected `Tors B'` (the `s̄` of the best bound).
pub const DIAGONAL_CASES: [([u64; 3], u64); 4] =
    [([2, 4, 4], 2), ([2, 6, 6], 3), ([2, 8, 8], 4), ([4, 6, 12], 6)];

pub const CYCLIC_STUDY: &str = "[[1,1,0],[3,0,3],[0,0,4]]";

/// Text form `diag(..)*[[..]]` of a matrix case.
pub fn matrix_case_text(d: &[i64; 3], m: &[[i64; 3]; 3]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
        .collect();
    format!("diag({},{},{})*[{}]", d[0], d[1], d[2], rows.join(","))
}

fn show(v: &[u64]) -> String {
    format!("{v:?}")
}

fn z(order: u64) -> String {
    if order == 1 {
        "0".to_string()
    } else {
        format!("Z/{order}")
    }
}

struct Table {
    checks: Vec<GoldenCheck>,
}

impl Table {
    fn push(&mut self, case: &str, quantity: &str, expected: String, got: String) {
        let pass = expected == got;
        self.checks.push(GoldenCheck {
            case: case.to_string(),
            quantity: quantity.to_string(),
            expected,
            got,
            pass,
        });
    }

    fn failed(&mut self, case: &str, quantity: &str, err: &Error) {
        self.checks.push(GoldenCheck {
            case: case.to_string(),
            quantity: quantity.to_string(),
            expected: "success".to_string(),
            got: err.to_string(),
            pass: false,
        });
    }
}

fn torsion(s: Result<AbelianGroupStructure, Error>) -> String {
    match s {
        Ok(s) => show(&s.torsion_factors),
        Err(e) => e.to_string(),
    }
}

fn matrix_cases(t: &mut Table, prefix: &str, cases: &[MatrixCase]) {
    for (i, (d, m, pi1, sm)) in cases.iter().enumerate() {
        let name = format!("{prefix} {}", i + 1);
        let spec = QuotientSpec::Matrix(matrix_case_text(d, m));
        match spec.build().and_then(|q| analyze_quotient(&q, false)) {
            Ok(r) => {
                t.push(&name, "pi_1", z(*pi1), r.pi1.structure.to_string());
                t.push(&name, "T", show(sm), show(&r.torsion_t.torsion_factors));
            }
            Err(e) => t.failed(&name, "analysis", &e),
        }
    }
}

fn diagonal_cases(t: &mut Table) {
    for (m, s) in DIAGONAL_CASES {
        let name = format!("diagonal {m:?}");
        match FiniteQuotient::diagonal(m).and_then(|q| analyze_quotient(&q, false)) {
            Ok(r) => {
                t.push(&name, "Tors B'", show(&[s]), show(&r.torsion_bprime.torsion_factors));
                t.push(&name, "best s̄", s.to_string(), r.bounds.best.s_bar.to_string());
                t.push(&name, "Tors Am | Tors B'", "true".into(), (s % r.torsion_t.torsion_order() == 0 && r.torsion_t.length() <= 1).to_string());
                t.push(&name, "B' = B", "true".into(), r.bprime_equals_b.to_string());
            }
            Err(e) => t.failed(&name, "analysis", &e),
        }
    }
}

fn cyclic_study(t: &mut Table) {
    let name = "cyclic m = 12";
    let q = match QuotientSpec::Matrix(CYCLIC_STUDY.into()).build() {
        Ok(q) => q,
        Err(e) => return t.failed(name, "construction", &e),
    };
    match analyze_quotient(&q, false) {
        Ok(r) => {
            t.push(name, "G cyclic of order", "12".into(), if r.classification.is_cyclic { r.group.order.to_string() } else { "not cyclic".into() });
            t.push(name, "Tors Am", "[]".into(), show(&r.torsion_t.torsion_factors));
        }
        Err(e) => t.failed(name, "analysis", &e),
    }
    let b = Filtration::new(&q, ModuleKind::AmEmbedded);
    let bp = Filtration::new(&q, ModuleKind::Bprime);
    t.push(name, "Tors B3/B2", "[2, 4]".into(), torsion(b.layer(3)));
    t.push(name, "Tors B'3/B'2", "[2, 4, 4]".into(), torsion(bp.layer(3)));
    for (perm, p_bar, rest) in [([0, 1, 2, 3], [2, 2], [1, 1]), ([0, 2, 1, 3], [1, 1], [1, 1])] {
        let quantity = format!("{perm:?} (p̄2,p̄3,q̄,s̄)");
        let expected = show(&[p_bar[0], p_bar[1], rest[0], rest[1]]);
        match torsion_bound(&q, perm) {
            Ok(b) => t.push(name, &quantity, expected, show(&[b.p_bar[0], b.p_bar[1], b.q_bar, b.s_bar])),
            Err(e) => t.failed(name, &quantity, &e),
        }
    }
    let p = q.permuted([0, 2, 1, 3]);
    t.push(name, "(0,2,1,3) Tors B2", "[]".into(), torsion(Filtration::new(&p, ModuleKind::AmEmbedded).member(2)));
    t.push(name, "(0,2,1,3) Tors B'2", "[]".into(), torsion(Filtration::new(&p, ModuleKind::Bprime).member(2)));
}

/// Runs every published example and compares exactly.
pub fn paper_examples() -> GoldenReport {
    let mut t = Table { checks: Vec::new() };
    matrix_cases(&mut t, "maximal length", &MAX_LENGTH_CASES);
    matrix_cases(&mut t, "prime to 6", &PRIME_TO_SIX_CASES);
    diagonal_cases(&mut t);
    cyclic_study(&mut t);
    let passed = t.checks.iter().all(|c| c.pass);
    GoldenReport { checks: t.checks, passed }
}
