use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::lattice::{lattice_basis, solve_in_lattice};
use super::smith::smith_diagonal;
use super::Matrix;
use crate::error::Error;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/a_1 ⊕ ... ⊕ Z/a_k`
/// with `1 < a_1 | a_2 | ... | a_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion_factors: Vec<u64>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion_factors: Vec::new(),
        }
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/c_i` for arbitrary orders `c_i`.
    /// An order of 0 counts as a free summand.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let mut free = free_rank;
        let mut chain: Vec<u64> = Vec::new();
        for &c in orders {
            if c == 0 {
                free += 1;
                continue;
            }
            if c == 1 {
                continue;
            }
            chain.push(c);
        }
        // re-balance into a divisibility chain prime by prime
        let mut powers: Vec<Vec<u64>> = Vec::new();
        for &c in &chain {
            for (p, e) in factorize(c) {
                let q = p.pow(e);
                match powers.iter_mut().find(|v| v[0] % p == 0) {
                    Some(v) => v.push(q),
                    None => powers.push(vec![q]),
                }
            }
        }
        let len = powers.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for v in &mut powers {
            v.sort_unstable();
            let off = len - v.len();
            for (i, q) in v.iter().enumerate() {
                factors[off + i] *= q;
            }
        }
        AbelianGroupStructure {
            free_rank: free,
            torsion_factors: factors,
        }
    }

    /// Cokernel structure from Smith diagonal entries of a matrix with `cols` columns.
    pub fn from_smith_diagonal(cols: usize, diag: &[BigInt]) -> Self {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
            .collect::<Vec<_>>();
        let mut s = AbelianGroupStructure {
            free_rank: cols - nonzero,
            torsion_factors: torsion,
        };
        s.torsion_factors.sort_unstable();
        s
    }

    /// `Z^cols / rowspan(a)`.
    pub fn cokernel(a: &Matrix<BigInt>) -> Self {
        Self::from_smith_diagonal(a.cols(), &smith_diagonal(a))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Minimal number of generators.
    pub fn length(&self) -> usize {
        self.free_rank + self.torsion_factors.len()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> u64 {
        self.torsion_factors.iter().product()
    }

    /// Exponent of the torsion part (1 when torsion-free).
    pub fn torsion_exponent(&self) -> u64 {
        self.torsion_factors.last().copied().unwrap_or(1)
    }

    pub fn torsion(&self) -> AbelianGroupStructure {
        AbelianGroupStructure {
            free_rank: 0,
            torsion_factors: self.torsion_factors.clone(),
        }
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion_factors.iter().map(|a| format!("Z/{a}")));
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `(span(upper) + span(rel)) / (span(lower) + span(rel))` inside `Z^n`,
/// with dense Hermite and Smith forms.
///
/// Fails with [`Error::NotContained`] naming the first row of `lower` that is
/// not in the upper subgroup.
pub fn abelian_subquotient(
    n: usize,
    rel: &Matrix<BigInt>,
    upper: &Matrix<BigInt>,
    lower: &Matrix<BigInt>,
) -> Result<AbelianGroupStructure, Error> {
    let empty = Matrix::zeros(0, n);
    let pick = |m: &Matrix<BigInt>| if m.rows() == 0 { empty.clone() } else { m.clone() };
    let (rel, upper, lower) = (pick(rel), pick(upper), pick(lower));
    let w = lattice_basis(&upper.vstack(&rel));
    if w.rows() == 0 {
        if let Some(i) = (0..lower.rows()).find(|&i| !lower.is_zero_row(i)) {
            return Err(Error::NotContained { index: i });
        }
        return Ok(AbelianGroupStructure::trivial());
    }
    let sub = lower.vstack(&rel);
    let mut coords = Vec::with_capacity(sub.rows());
    for i in 0..sub.rows() {
        match solve_in_lattice(&w, sub.row(i)) {
            Some(x) => coords.push(x),
            None => return Err(Error::NotContained { index: i }),
        }
    }
    let c = Matrix::from_rows(coords, w.rows());
    Ok(AbelianGroupStructure::cokernel(&c))
}

/// Order of `x` in `Z/d_1 ⊕ ... ⊕ Z/d_k` (a zero modulus means `Z`; `None` for infinite order).
pub fn element_order(x: &[BigInt], moduli: &[BigInt]) -> Option<BigInt> {
    let mut ord = BigInt::one();
    for (v, d) in x.iter().zip(moduli) {
        if d.is_zero() {
            if !v.is_zero() {
                return None;
            }
            continue;
        }
        let o = d / v.gcd(d);
        ord = ord.lcm(&o);
    }
    Some(ord)
}
