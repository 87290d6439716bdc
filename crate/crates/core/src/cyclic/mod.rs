//! Cyclic quotients `G = Z/m`, `alpha(t_i) = t^{m_i}`.
//!
//! The module `Am(alpha) ⊗ k` over `k[t]` has invariant factors
//! `f1 = f2 = f3 = t - 1`, `f4 = (t + 1)^delta (t - 1)`, `f6 = t^m - 1` and
//! `f5 = prod Phi_d`, the product over divisors `d | m` with `d | m_i, m_j` for
//! some `0 <= i < j <= 3` or `d | m_ij, m_ik` for some `{i, j, k} = {1, 2, 3}`.
//! Over `F_p` the factors are the reductions of the same integer polynomials.

mod cyclotomic;
pub mod roots;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{poly_smith_normal_form, AbelianGroupStructure, Matrix};
use crate::modules::{module_rank_torsion, present_am};
use crate::quotient::{FiniteQuotient, PAIRS};
use crate::ring::{Fp, Poly};
use crate::IntPoly;


pub use cyclotomic::{cyclotomic, divisors, euler_phi, CyclotomicProduct};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicData {
    pub m: u64,
    /// Canonical weights: the lexicographically smallest unit multiple.
    pub weights: [u64; 4],
    /// Weights with respect to the generator picked by the Smith basis.
    pub raw_weights: [u64; 4],
    /// `m_ij = gcd(m, m_i + m_j)` for the pairs in [`PAIRS`] order.
    pub pair_gcds: [u64; 6],
    pub delta: u8,
}

impl CyclicData {
    /// Validates `sum m_i = 0 mod m` and `gcd(m, m1, m2, m3) = 1`.
    pub fn from_weights(m: u64, weights: [u64; 4]) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::CyclicParameters("m must be positive".into()));
        }
        let w = weights.map(|x| x % m);
        if w.iter().sum::<u64>() % m != 0 {
            return Err(Error::CyclicParameters(format!("weights {weights:?} do not sum to 0 mod {m}")));
        }
        if w[1..].iter().fold(m, |g, x| g.gcd(x)) != 1 {
            return Err(Error::CyclicParameters(format!("gcd(m, m1, m2, m3) != 1 for {weights:?}")));
        }
        let canonical = canonical_weights(m, w);
        let pair_gcds = PAIRS.map(|(i, j)| m.gcd(&((canonical[i] + canonical[j]) % m)));
        let odd = canonical[1..].iter().all(|x| x % 2 == 1);
        let delta = (m % 2 == 0 && odd) as u8;
        let d = CyclicData {
            m,
            weights: canonical,
            raw_weights: w,
            pair_gcds,
            delta,
        };
        d.check()?;
        Ok(d)
    }

    pub fn pair_gcd(&self, i: usize, j: usize) -> u64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pair_gcds[PAIRS.iter().position(|&p| p == (a, b)).unwrap()]
    }

    fn check(&self) -> Result<(), Error> {
        for (i, j) in PAIRS {
            let (k, l) = complement(i, j);
            if self.pair_gcd(i, j) != self.pair_gcd(k, l) {
                return Err(Error::Assertion(format!("m_{i}{j} != m_{k}{l} for {self:?}")));
            }
        }
        let g = self.pair_gcd(1, 2).gcd(&self.pair_gcd(1, 3)).gcd(&self.pair_gcd(2, 3));
        if g != 1 << self.delta {
            return Err(Error::Assertion(format!("gcd(m12, m13, m23) = {g} but delta = {}", self.delta)));
        }
        Ok(())
    }

    fn phi(&self, e: u64) -> IntPoly {
        Poly::t_pow_minus_one(e as usize)
    }
}

fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&x| x != i && x != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

fn canonical_weights(m: u64, w: [u64; 4]) -> [u64; 4] {
    (1..=m)
        .filter(|u| u.gcd(&m) == 1)
        .map(|u| w.map(|x| (x * u) % m))
        .min()
        .unwrap_or(w)
}

/// Weights of a cyclic quotient, read off the generator of the Smith basis.
pub fn cyclic_weights(q: &FiniteQuotient) -> Result<CyclicData, Error> {
    if !q.is_cyclic_group() {
        return Err(Error::NotCyclic);
    }
    let w = [0, 1, 2, 3].map(|i| q.generator(i).0[2]);
    let m = q.order();
    let d = CyclicData::from_weights(m, w)?;
    if (w[1] + w[2] + w[3] + w[0]) % m != 0 {
        return Err(Error::Assertion(format!("weights {w:?} do not sum to 0 mod {m}")));
    }
    Ok(d)
}

/// Divisors of `m` entering `f5`, with a check that the two conditions never overlap for `d > 2`.
fn f5_divisors(c: &CyclicData) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for d in divisors(c.m) {
        let divides = |x: u64| x % d == 0;
        let cond1 = PAIRS
            .iter()
            .filter(|&&(i, j)| divides(c.weights[i]) && divides(c.weights[j]))
            .count();
        let cond2 = [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
            .iter()
            .filter(|&&(i, j, k)| divides(c.pair_gcd(i, j)) && divides(c.pair_gcd(i, k)))
            .count();
        if d > 2 && (cond1 > 1 || cond2 > 1 || (cond1 > 0 && cond2 > 0)) {
            return Err(Error::Assertion(format!(
                "divisor {d} of m = {} satisfies {cond1} pair and {cond2} index conditions",
                c.m
            )));
        }
        if cond1 > 0 || cond2 > 0 {
            out.push(d);
        }
    }
    Ok(out)
}

/// `f1, ..., f6` as products of cyclotomic polynomials.
pub fn closed_form_factors(c: &CyclicData) -> Result<[CyclotomicProduct; 6], Error> {
    let one = CyclotomicProduct::from_divisors(&[1]);
    let mut f4 = one.clone();
    if c.delta == 1 {
        f4.multiply(2, 1);
    }
    let f5 = CyclotomicProduct::from_divisors(&f5_divisors(c)?);
    let f6 = CyclotomicProduct::from_divisors(&divisors(c.m));
    Ok([one.clone(), one.clone(), one, f4, f5, f6])
}

/// The 9x6 relation matrix of `Am(alpha)` over `Z[t]`, columns `a1, a2, a3, c1, c2, c3`.
pub fn relation_matrix_m(c: &CyclicData) -> Matrix<IntPoly> {
    let z = IntPoly::zero;
    let p = |i: usize| c.phi(c.weights[i]);
    let phi = c.phi(c.m);
    let pij = |i, j| c.phi(c.pair_gcd(i, j));
    let rows = vec![
        vec![z(), p(3), -p(2), p(3), z(), z()],
        vec![p(3), z(), -p(1), z(), p(3), z()],
        vec![-p(2), p(1), z(), z(), z(), p(1)],
        vec![phi.clone(), z(), z(), z(), z(), z()],
        vec![z(), phi.clone(), z(), z(), z(), z()],
        vec![z(), z(), phi, z(), z(), z()],
        vec![z(), z(), z(), pij(2, 3), z(), z()],
        vec![z(), z(), z(), z(), pij(1, 3), z()],
        vec![z(), z(), z(), z(), z(), pij(1, 2)],
    ];
    Matrix::from_rows(rows, 6)
}

/// Invariant factors of `m` over `Q` (`p == 0`) or `F_p`, rendered as text.
///
/// Over `Q` the factors come from ranks at the roots of `t^n - 1`, see [`roots`].
fn over_field(p: u64, m: &Matrix<IntPoly>, n: u64) -> Result<(Vec<String>, Vec<usize>), Error> {
    fn render<K: crate::ring::Field + std::fmt::Display>(v: Vec<Poly<K>>) -> (Vec<String>, Vec<usize>) {
        (
            v.iter().map(|f| f.to_string()).collect(),
            v.iter().map(|f| f.degree().unwrap_or(usize::MAX)).collect(),
        )
    }
    if p == 0 {
        let v = roots::smith_over_q(m, n)?;
        Ok(render(v.iter().map(|f| f.expand().map(|c| BigRational::from_integer(c.clone()))).collect()))
    } else {
        let mp = m.map(|f| f.map(|c| Fp::from_bigint(c, p)));
        Ok(render(poly_smith_normal_form(&mp)))
    }
}

fn closed_over_field(p: u64, f: &[CyclotomicProduct; 6]) -> (Vec<String>, Vec<usize>) {
    if p == 0 {
        let v: Vec<Poly<BigRational>> = f
            .iter()
            .map(|x| x.expand().map(|c| BigRational::from_integer(c.clone())))
            .collect();
        (v.iter().map(|x| x.to_string()).collect(), v.iter().map(|x| x.degree().unwrap()).collect())
    } else {
        let v: Vec<Poly<Fp>> = f.iter().map(|x| x.expand().map(|c| Fp::from_bigint(c, p))).collect();
        (v.iter().map(|x| x.to_string()).collect(), v.iter().map(|x| x.degree().unwrap()).collect())
    }
}

/// Closed form against polynomial Smith form in one characteristic.
#[derive(Clone, Debug, Serialize)]
pub struct FieldCheck {
    /// 0 for `Q`.
    pub characteristic: u64,
    pub closed_form: Vec<String>,
    pub smith: Vec<String>,
    pub degree_sum: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicVerification {
    pub data: CyclicData,
    pub factors: Vec<CyclotomicProduct>,
    pub fields: Vec<FieldCheck>,
    /// `m + 4 + delta + sum phi(d)` over the `f5` divisors.
    pub rank_from_divisors: usize,
    /// `m - 4 - delta + sum gcd(m, m_i, m_j) + sum gcd(m_ij, m_ik)`.
    pub rank_from_subgroups: i64,
    pub integer_rank: usize,
    pub integer_torsion: AbelianGroupStructure,
    pub closed_form_matches: bool,
    pub degree_sums_equal: bool,
    pub torsion_free: bool,
    pub passed: bool,
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Checks one field; `p == 0` means `Q`.
pub fn check_field(c: &CyclicData, p: u64) -> Result<FieldCheck, Error> {
    let f = closed_form_factors(c)?;
    let (closed, closed_deg) = closed_over_field(p, &f);
    let (smith, _) = over_field(p, &relation_matrix_m(c), c.m)?;
    Ok(FieldCheck {
        characteristic: p,
        matches: closed == smith,
        degree_sum: closed_deg.iter().sum(),
        closed_form: closed,
        smith,
    })
}

/// Closed forms against polynomial Smith forms over `Q` and every `F_p` with `p | m`,
/// and against the integer presentation of `Am`.
pub fn verify_cyclic(q: &FiniteQuotient) -> Result<CyclicVerification, Error> {
    let c = cyclic_weights(q)?;
    let factors = closed_form_factors(&c)?;
    let mut fields = vec![check_field(&c, 0)?];
    for p in prime_divisors(c.m) {
        fields.push(check_field(&c, p)?);
    }
    let (integer_rank, integer_torsion) = module_rank_torsion(&present_am(q));
    let rank_from_divisors =
        c.m as usize + 4 + c.delta as usize + f5_divisors(&c)?.iter().map(|&d| euler_phi(d) as usize).sum::<usize>();
    let d_pairs: u64 = PAIRS.iter().map(|&(i, j)| c.m.gcd(&c.weights[i]).gcd(&c.weights[j])).sum();
    let d_single: u64 = [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
        .iter()
        .map(|&(i, j, k)| c.pair_gcd(i, j).gcd(&c.pair_gcd(i, k)))
        .sum();
    let rank_from_subgroups = c.m as i64 - 4 - c.delta as i64 + d_pairs as i64 + d_single as i64;
    let closed_form_matches = fields.iter().all(|f| f.matches);
    let degree_sums_equal = fields.iter().all(|f| f.degree_sum == integer_rank)
        && rank_from_divisors == integer_rank
        && rank_from_subgroups == integer_rank as i64;
    let torsion_free = integer_torsion.is_trivial();
    Ok(CyclicVerification {
        data: c,
        factors: factors.to_vec(),
        fields,
        rank_from_divisors,
        rank_from_subgroups,
        integer_rank,
        integer_torsion,
        closed_form_matches,
        degree_sums_equal,
        torsion_free,
        passed: closed_form_matches && degree_sums_equal && torsion_free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_sum(c: &CyclicData) -> u64 {
        closed_form_factors(c).unwrap().iter().map(|f| f.degree()).sum()
    }

    #[test]
    fn small_closed_forms() {
        let c = CyclicData::from_weights(5, [2, 1, 1, 1]).unwrap();
        let f = closed_form_factors(&c).unwrap();
        assert_eq!(f[4], CyclotomicProduct::from_divisors(&[1]));
        assert_eq!(degree_sum(&c), 10);
        let c = CyclicData::from_weights(6, [1, 1, 2, 2]).unwrap();
        assert_eq!(closed_form_factors(&c).unwrap()[4], CyclotomicProduct::from_divisors(&[1, 2, 3]));
        assert_eq!(degree_sum(&c), 14);
        let c = CyclicData::from_weights(1, [0, 0, 0, 0]).unwrap();
        assert_eq!(degree_sum(&c), 6);
    }

    #[test]
    fn invalid_weights() {
        assert!(CyclicData::from_weights(4, [0, 2, 2, 0]).is_err());
        assert!(CyclicData::from_weights(5, [1, 1, 1, 1]).is_err());
    }

    #[test]
    fn weights_round_trip() {
        let q = FiniteQuotient::cyclic(5, [2, 1, 1, 1]).unwrap();
        let c = cyclic_weights(&q).unwrap();
        assert_eq!(c.weights, CyclicData::from_weights(5, [2, 1, 1, 1]).unwrap().weights);
        assert!(matches!(cyclic_weights(&FiniteQuotient::fermat(2).unwrap()), Err(Error::NotCyclic)));
    }

    #[test]
    fn smith_agrees_with_closed_form() {
        for (m, w) in [(5, [2, 1, 1, 1]), (6, [1, 1, 2, 2]), (4, [1, 1, 1, 1]), (12, [8, 1, 0, 3])] {
            let c = CyclicData::from_weights(m, w).unwrap();
            for p in [0, 2, 3, 5] {
                let r = check_field(&c, p).unwrap();
                assert!(r.matches, "m={m} w={w:?} p={p}: {:?} vs {:?}", r.closed_form, r.smith);
            }
        }
    }

    #[test]
    fn roots_agree_with_euclid_over_q() {
        for (m, w) in [(5, [2, 1, 1, 1]), (6, [1, 1, 2, 2]), (4, [1, 1, 1, 1]), (12, [8, 1, 0, 3]), (10, [1, 3, 2, 4])] {
            let c = CyclicData::from_weights(m, w).unwrap();
            let a = relation_matrix_m(&c);
            let q = a.map(|f| f.map(|x| BigRational::from_integer(x.clone())));
            let euclid: Vec<String> = poly_smith_normal_form(&q).iter().map(|f| f.to_string()).collect();
            assert_eq!(over_field(0, &a, m).unwrap().0, euclid, "m={m} w={w:?}");
        }
    }

    #[test]
    fn study_quotient_verifies() {
        let q = FiniteQuotient::from_kernel_matrix(&Matrix::from_i64_rows(&[&[1, 1, 0], &[3, 0, 3], &[0, 0, 4]]))
            .unwrap();
        let v = verify_cyclic(&q).unwrap();
        assert_eq!(v.data.m, 12);
        assert!(v.passed, "{v:?}");
    }
}
