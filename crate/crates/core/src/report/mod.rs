//! Full invariant pipeline for one quotient, the golden example table and
//! seeded batch runs.

mod batch;
mod golden;

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cyclic::{verify_cyclic, CyclicVerification};
use crate::error::Error;
use crate::linalg::AbelianGroupStructure;
use crate::modules::{
    all_torsion_bounds, module_rank_torsion, present_am, present_bprime, TorsionBoundParams,
};
use crate::pi1::{pi1, Pi1Result};
use crate::quotient::{
    parse_int_matrix, parse_kernel_matrix, Classification, Constructor, FiniteQuotient,
    SubgroupOrders,
};

pub use batch::{batch_lines, batch_matrices, batch_run, random_unimodular, BatchConfig, BatchSummary, Monitor};
pub use golden::{
    matrix_case_text, paper_examples, GoldenCheck, GoldenReport, CYCLIC_STUDY, DIAGONAL_CASES, MAX_LENGTH_CASES,
    PRIME_TO_SIX_CASES,
};

/// How the user named a quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientSpec {
    Matrix(String),
    Fermat(u64),
    Diagonal([u64; 3]),
    Cyclic { m: u64, weights: [u64; 4] },
    Exponent(String),
}

impl QuotientSpec {
    pub fn build(&self) -> Result<FiniteQuotient, Error> {
        match self {
            QuotientSpec::Matrix(s) => FiniteQuotient::from_kernel_matrix(&parse_kernel_matrix(s)?),
            QuotientSpec::Fermat(m) => FiniteQuotient::fermat(*m),
            QuotientSpec::Diagonal(m) => FiniteQuotient::diagonal(*m),
            QuotientSpec::Cyclic { m, weights } => FiniteQuotient::cyclic(*m, *weights),
            QuotientSpec::Exponent(s) => FiniteQuotient::from_exponent_matrix(&parse_int_matrix(s)?),
        }
    }

    /// `m1,m2,m3`.
    pub fn parse_diagonal(s: &str) -> Result<Self, Error> {
        let v = parse_list(s, ',')?;
        let m: [u64; 3] = v
            .try_into()
            .map_err(|v: Vec<u64>| Error::InvalidParameter(format!("expected 3 entries, got {}", v.len())))?;
        Ok(QuotientSpec::Diagonal(m))
    }

    /// `m:w0,w1,w2,w3`.
    pub fn parse_cyclic(s: &str) -> Result<Self, Error> {
        let (m, w) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse { position: 0, message: "expected m:w0,w1,w2,w3".into() })?;
        let m = parse_list(m, ',')?;
        let w = parse_list(w, ',')?;
        if m.len() != 1 || w.len() != 4 {
            return Err(Error::Parse { position: 0, message: "expected m:w0,w1,w2,w3".into() });
        }
        Ok(QuotientSpec::Cyclic { m: m[0], weights: [w[0], w[1], w[2], w[3]] })
    }
}

fn parse_list(s: &str, sep: char) -> Result<Vec<u64>, Error> {
    let mut pos = 0;
    let mut out = Vec::new();
    for part in s.split(sep) {
        let t = part.trim();
        out.push(t.parse().map_err(|_| Error::Parse {
            position: pos,
            message: format!("expected a nonnegative integer, found '{t}'"),
        })?);
        pos += part.chars().count() + 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    /// Hermite basis of `Ker alpha`.
    pub canonical_kernel: Vec<Vec<i64>>,
    pub constructor: Constructor,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupData {
    pub order: u64,
    pub exponent: u64,
    /// Invariant factors `d1 | d2 | d3`, trivial ones included.
    pub factors: [u64; 3],
    pub height: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankK {
    pub formula: i64,
    pub snf: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub best: TorsionBoundParams,
    /// Filled only on request; otherwise empty.
    pub all_permutations: Vec<TorsionBoundParams>,
    /// `6 + delta`.
    pub length_bound: u64,
    /// `(exp G)^3 / |G|`.
    pub exponent_bound: u64,
}

/// Hypotheses that are expected, but not known, to hold when `pi_1 = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Monitors {
    pub pi1_trivial: bool,
    /// `l(T) <= 3 + delta`.
    pub length_le_3_plus_delta: bool,
    /// `exp T | height`.
    pub exponent_divides_height: bool,
}

/// Everything computed for one quotient.
///
/// `torsion_t` is `Tors Am(alpha)`, which is dual to `T(alpha)` and so has the same invariant factors.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub input: InputEcho,
    pub group: GroupData,
    pub classification: Classification,
    pub subgroup_orders: SubgroupOrders,
    pub delta: u8,
    pub pi1: Pi1Result,
    pub rank_am: usize,
    pub rank_k: RankK,
    pub torsion_t: AbelianGroupStructure,
    pub rank_bprime: usize,
    pub torsion_bprime: AbelianGroupStructure,
    /// `B'(alpha) -> B(alpha)` is an isomorphism (equal ranks and torsion).
    pub bprime_equals_b: bool,
    pub bounds: Bounds,
    pub cyclic: Option<CyclicVerification>,
    /// Special class, `gcd(|G|, 6) = 1`, `pi_1 = 0` and `T = 0`.
    pub generated_over_z: bool,
    pub monitors: Monitors,
}

impl InvariantReport {
    /// JSON with keys in alphabetical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn assertion(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::Assertion(msg()))
    }
}

/// `a_k | b_k` for the k-th largest factors; `a` may be shorter.
fn dominated(a: &[u64], b: &[u64]) -> bool {
    a.len() <= b.len() && a.iter().rev().zip(b.iter().rev()).all(|(x, y)| y % x == 0)
}

pub fn analyze(spec: &QuotientSpec) -> Result<InvariantReport, Error> {
    analyze_quotient(&spec.build()?, false)
}

/// The pipeline on an already constructed quotient.
pub fn analyze_quotient(q: &FiniteQuotient, all_permutation_bounds: bool) -> Result<InvariantReport, Error> {
    let kernel = q.canonical_kernel();
    let canonical_kernel = kernel
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("kernel entry fits in i64")).collect())
        .collect();
    let classification = q.classify();
    let subgroup_orders = q.subgroup_orders();
    let delta = subgroup_orders.delta;
    let order = q.order();
    let exp = q.exponent();

    let pi1 = pi1(q)?;
    assertion(!classification.is_special() || pi1.order == 1, || {
        format!("pi_1 = {} for a special quotient", pi1.structure)
    })?;

    let (rank_am, torsion_t) = module_rank_torsion(&present_am(q));
    let (rank_bprime, torsion_bprime) = module_rank_torsion(&present_bprime(q));
    let rank_k = RankK {
        formula: subgroup_orders.rank_k_formula(),
        snf: rank_am as i64 - order as i64 + 1,
    };
    assertion(rank_k.formula == rank_k.snf, || {
        format!("rank K: formula {} but SNF gives {}", rank_k.formula, rank_k.snf)
    })?;
    assertion(rank_bprime as i64 == rank_k.snf - 3, || {
        format!("rank B' = {rank_bprime} but rank B = {}", rank_k.snf - 3)
    })?;
    assertion(
        dominated(&torsion_t.torsion_factors, &torsion_bprime.torsion_factors),
        || format!("Tors B' = {torsion_bprime} does not dominate Tors Am = {torsion_t}"),
    )?;

    let length_bound = 6 + delta as u64;
    let e = exp as u128;
    let exponent_bound = (e * e * e / order as u128) as u64;
    assertion(torsion_t.length() as u64 <= length_bound, || {
        format!("l(T) = {} exceeds 6 + delta", torsion_t.length())
    })?;
    assertion(exponent_bound % torsion_t.torsion_exponent() == 0, || {
        format!("exp T = {} does not divide {exponent_bound}", torsion_t.torsion_exponent())
    })?;

    let all = all_torsion_bounds(q)?;
    let t_order = torsion_t.torsion_order();
    for b in &all {
        assertion(b.product() % t_order == 0, || {
            format!("|T| = {t_order} does not divide the bound {} for {:?}", b.product(), b.permutation)
        })?;
        if delta == 1 {
            assertion(b.s_bar % b.q_bar == 0, || format!("q̄ ∤ s̄ for {:?}", b.permutation))?;
        }
    }
    let best = all
        .iter()
        .min_by_key(|b| (b.product(), b.length(), b.permutation))
        .cloned()
        .expect("24 permutations");

    let cyclic = if classification.is_cyclic {
        let v = verify_cyclic(q)?;
        assertion(v.passed, || format!("cyclic verification failed: {v:?}"))?;
        Some(v)
    } else {
        None
    };

    let pi1_trivial = pi1.order == 1;
    let generated_over_z = classification.is_special()
        && order.gcd(&6) == 1
        && pi1_trivial
        && torsion_t.is_trivial();
    let monitors = Monitors {
        pi1_trivial,
        length_le_3_plus_delta: torsion_t.length() as u64 <= 3 + delta as u64,
        exponent_divides_height: classification.height % torsion_t.torsion_exponent() == 0,
    };

    Ok(InvariantReport {
        input: InputEcho {
            canonical_kernel,
            constructor: q.constructor().clone(),
        },
        group: GroupData {
            order,
            exponent: exp,
            factors: q.factors(),
            height: classification.height,
        },
        bprime_equals_b: torsion_bprime == torsion_t,
        classification,
        subgroup_orders,
        delta,
        pi1,
        rank_am,
        rank_k,
        torsion_t,
        rank_bprime,
        torsion_bprime,
        bounds: Bounds {
            best,
            all_permutations: if all_permutation_bounds { all } else { Vec::new() },
            length_bound,
            exponent_bound,
        },
        cyclic,
        generated_over_z,
        monitors,
    })
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.group;
        let c = &self.classification;
        writeln!(f, "kernel (Hermite)  {:?}", self.input.canonical_kernel)?;
        writeln!(
            f,
            "G                 order {}, exponent {}, factors {:?}, height {}",
            g.order, g.exponent, g.factors, g.height
        )?;
        let mut classes = Vec::new();
        for (flag, name) in [
            (c.is_fermat, "Fermat"),
            (c.is_unramified, "unramified"),
            (c.is_cyclic, "cyclic"),
            (c.is_diagonal, "diagonal"),
        ] {
            if flag {
                classes.push(name);
            }
        }
        writeln!(f, "special classes   {}", if classes.is_empty() { "none".to_string() } else { classes.join(", ") })?;
        writeln!(f, "delta             {}", self.delta)?;
        writeln!(f, "pi_1              {}", self.pi1.structure)?;
        writeln!(f, "rank K            {}", self.rank_k.snf)?;
        writeln!(f, "T                 {} sm={:?}", self.torsion_t, self.torsion_t.torsion_factors)?;
        writeln!(f, "Tors B'           {}", self.torsion_bprime)?;
        let b = &self.bounds.best;
        writeln!(
            f,
            "best bound        {:?}: (q̄,s̄)={:?} (p̄2,p̄3)={:?} n̄={:?}",
            b.permutation, b.bound_layers[0], b.bound_layers[1], b.bound_layers[2]
        )?;
        if let Some(v) = &self.cyclic {
            writeln!(f, "cyclic weights    m={} {:?}, checks passed: {}", v.data.m, v.data.weights, v.passed)?;
        }
        write!(f, "generated over Z  {}", self.generated_over_z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_three() {
        let r = analyze(&QuotientSpec::Fermat(3)).unwrap();
        assert!(r.torsion_t.is_trivial());
        assert_eq!(r.rank_k.snf, 24);
        assert_eq!(r.pi1.order, 1);
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            QuotientSpec::parse_cyclic("12:3,1,0,8").unwrap(),
            QuotientSpec::Cyclic { m: 12, weights: [3, 1, 0, 8] }
        );
        assert_eq!(QuotientSpec::parse_diagonal("4, 6,12").unwrap(), QuotientSpec::Diagonal([4, 6, 12]));
        assert!(QuotientSpec::parse_diagonal("4,6").is_err());
        assert!(matches!(QuotientSpec::parse_cyclic("12"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_keys_sorted() {
        let r = analyze(&QuotientSpec::Diagonal([2, 4, 4])).unwrap();
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let keys: Vec<&str> = ["\"bounds\"", "\"bprime_equals_b\"", "\"classification\"", "\"cyclic\""]
            .into_iter()
            .collect();
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
