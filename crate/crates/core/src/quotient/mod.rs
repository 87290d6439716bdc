//! Finite quotients `alpha: GG -> G` of `GG = <t0, t1, t2, t3 | t0 t1 t2 t3 = 1>`.
//!
//! `GG` is identified with `Z^3` through the basis `t1, t2, t3`, so that
//! `t0 = (-1, -1, -1)`. A quotient is given by a 3x3 matrix whose rows
//! generate `Ker alpha`.

mod classify;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{hermite_only, lattice_basis, left_kernel, smith_normal_form, Matrix};
use crate::IntMatrix;

pub use classify::{Classification, SubgroupOrders, PAIRS};
pub use parse::{parse_int_matrix, parse_kernel_matrix};

/// Additive coordinates of `t0, t1, t2, t3` in the basis `t1, t2, t3`.
pub const GENERATORS: [[i64; 3]; 4] = [[-1, -1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// A word `t0^w0 t1^w1 t2^w2 t3^w3` in additive coordinates.
pub fn word_vector(w: [i64; 4]) -> [i64; 3] {
    [w[1] - w[0], w[2] - w[0], w[3] - w[0]]
}

/// Element of `Z/d1 ⊕ Z/d2 ⊕ Z/d3` with canonical coordinates `0 <= x_i < d_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub [u64; 3]);

/// How a quotient was specified; echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constructor {
    Matrix,
    Fermat { m: u64 },
    Diagonal { m: [u64; 3] },
    Cyclic { m: u64, weights: [u64; 4] },
    Exponent { matrix: Vec<Vec<i64>> },
}

/// `Z^3` modulo a full-rank sublattice, in Smith coordinates.
#[derive(Clone, Debug)]
struct SmithCoordinates {
    moduli: [u64; 3],
    v: IntMatrix,
}

impl SmithCoordinates {
    fn new(gens: &IntMatrix) -> Result<Self, Error> {
        let s = smith_normal_form(gens);
        let d = s.diagonal();
        if d.len() < 3 || d.iter().any(Zero::is_zero) {
            return Err(Error::SingularKernel);
        }
        let moduli = [0, 1, 2].map(|i| d[i].to_u64().expect("group order fits in u64"));
        Ok(SmithCoordinates { moduli, v: s.v })
    }

    fn encode(&self, x: &[i64; 3]) -> GroupElement {
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        let y = self.v.left_mul_vec(&xb);
        GroupElement([0, 1, 2].map(|i| {
            let d = BigInt::from(self.moduli[i]);
            y[i].mod_floor(&d).to_u64().unwrap()
        }))
    }

    fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn element_order(&self, g: GroupElement) -> u64 {
        (0..3).fold(1u64, |acc, i| {
            let d = self.moduli[i];
            acc.lcm(&(d / g.0[i].gcd(&d)))
        })
    }
}

/// A finite quotient together with its group data.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    kernel: IntMatrix,
    hermite: IntMatrix,
    coords: SmithCoordinates,
    constructor: Constructor,
}

impl FiniteQuotient {
    pub fn from_kernel_matrix(kernel: &IntMatrix) -> Result<Self, Error> {
        Self::build(kernel, Constructor::Matrix)
    }

    fn build(kernel: &IntMatrix, constructor: Constructor) -> Result<Self, Error> {
        if kernel.rows() != 3 || kernel.cols() != 3 {
            return Err(Error::InvalidParameter(format!(
                "kernel matrix must be 3x3, got {}x{}",
                kernel.rows(),
                kernel.cols()
            )));
        }
        if kernel.determinant().is_zero() {
            return Err(Error::SingularKernel);
        }
        let coords = SmithCoordinates::new(kernel)?;
        let q = FiniteQuotient {
            kernel: kernel.clone(),
            hermite: hermite_only(kernel),
            coords,
            constructor,
        };
        debug_assert_eq!(
            BigInt::from(q.order()),
            q.kernel.determinant().abs(),
            "order disagrees with the determinant"
        );
        Ok(q)
    }

    /// The Fermat quotient `GG -> GG / m GG`.
    pub fn fermat(m: u64) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::InvalidParameter("Fermat degree must be positive".into()));
        }
        let k = Matrix::diagonal(3, 3, &[BigInt::from(m), BigInt::from(m), BigInt::from(m)]);
        Self::build(&k, Constructor::Fermat { m })
    }

    /// `Ker alpha = <m1 t1, m2 t2, m3 t3>`.
    pub fn diagonal(m: [u64; 3]) -> Result<Self, Error> {
        if m.contains(&0) {
            return Err(Error::InvalidParameter("diagonal entries must be positive".into()));
        }
        let k = Matrix::diagonal(3, 3, &m.map(BigInt::from));
        Self::build(&k, Constructor::Diagonal { m })
    }

    /// Cyclic quotient `t_i -> t^{w_i}` onto `Z/m`.
    pub fn cyclic(m: u64, weights: [u64; 4]) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::CyclicParameters("m must be positive".into()));
        }
        let sum: u64 = weights.iter().map(|w| w % m).sum();
        if sum % m != 0 {
            return Err(Error::CyclicParameters(format!(
                "weights must sum to 0 mod {m}, got {sum}"
            )));
        }
        let g = weights[1..].iter().fold(m, |g, &w| g.gcd(&w));
        if g != 1 {
            return Err(Error::CyclicParameters(format!(
                "gcd(m, m1, m2, m3) must be 1, got {g}"
            )));
        }
        let col = Matrix::from_rows(
            vec![
                vec![BigInt::from(weights[1] % m)],
                vec![BigInt::from(weights[2] % m)],
                vec![BigInt::from(weights[3] % m)],
                vec![BigInt::from(m)],
            ],
            1,
        );
        // {r : r1 w1 + r2 w2 + r3 w3 = 0 mod m} is the projection of the left kernel
        let k = left_kernel(&col);
        let rows: Vec<Vec<BigInt>> = (0..k.rows()).map(|i| k.row(i)[..3].to_vec()).collect();
        let kernel = lattice_basis(&Matrix::from_rows(rows, 3));
        let q = Self::build(&kernel, Constructor::Cyclic { m, weights: weights.map(|w| w % m) })?;
        if q.order() != m || !q.is_cyclic_group() {
            return Err(Error::Assertion(format!(
                "cyclic constructor produced a group of order {} with factors {:?}",
                q.order(),
                q.factors()
            )));
        }
        Ok(q)
    }

    /// Quotient attached to a Delsarte exponent matrix (column action `t_j -> prod_i t_i^{a_ij}`).
    pub fn from_exponent_matrix(a: &IntMatrix) -> Result<Self, Error> {
        if a.rows() != 4 || a.cols() != 4 {
            return Err(Error::InvalidParameter("exponent matrix must be 4x4".into()));
        }
        let bad = |condition, detail: String| Error::ExponentMatrix { condition, detail };
        for i in 0..4 {
            for j in 0..4 {
                if a[(i, j)].is_negative() {
                    return Err(bad(1, format!("entry ({i},{j}) is negative")));
                }
            }
        }
        for j in 0..4 {
            if (0..4).all(|i| !a[(i, j)].is_zero()) {
                return Err(bad(2, format!("column {j} has no zero")));
            }
        }
        let sums: Vec<BigInt> = (0..4).map(|i| a.row(i).iter().sum()).collect();
        if sums.iter().any(|s| s != &sums[0]) {
            return Err(bad(3, "row sums are not constant".into()));
        }
        let det = a.determinant();
        if det.is_zero() {
            return Err(bad(4, "determinant is zero".into()));
        }
        let d = cofactor_gcd(a);
        let m = (det.abs() / &d).to_u64().expect("m fits in u64");
        let mut gens: Vec<Vec<BigInt>> = (0..4)
            .map(|j| {
                let l: Vec<BigInt> = (0..4).map(|i| a[(i, j)].clone()).collect();
                (1..4).map(|i| &l[i] - &l[0]).collect()
            })
            .collect();
        for i in 0..3 {
            let mut r = vec![BigInt::zero(); 3];
            r[i] = BigInt::from(m);
            gens.push(r);
        }
        let kernel = lattice_basis(&Matrix::from_rows(gens, 3));
        let rows = (0..4)
            .map(|i| a.row(i).iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        Self::build(&kernel, Constructor::Exponent { matrix: rows })
    }

    pub fn kernel(&self) -> &IntMatrix {
        &self.kernel
    }

    /// Hermite basis of `Ker alpha`; equal lattices give equal matrices.
    pub fn canonical_kernel(&self) -> &IntMatrix {
        &self.hermite
    }

    pub fn constructor(&self) -> &Constructor {
        &self.constructor
    }

    /// Invariant factors `(d1, d2, d3)` of `G`, trivial ones included.
    pub fn factors(&self) -> [u64; 3] {
        self.coords.moduli
    }

    pub fn order(&self) -> u64 {
        self.coords.order()
    }

    /// `exp G`.
    pub fn exponent(&self) -> u64 {
        self.coords.moduli[2]
    }

    pub fn is_cyclic_group(&self) -> bool {
        self.coords.moduli[0] == 1 && self.coords.moduli[1] == 1
    }

    /// Largest `n` with `Ker alpha ⊆ n GG`.
    pub fn kernel_content(&self) -> u64 {
        self.kernel.content().to_u64().unwrap()
    }

    /// `exp G / n`.
    pub fn height(&self) -> u64 {
        let n = self.kernel_content();
        assert_eq!(self.exponent() % n, 0, "content does not divide the exponent");
        self.exponent() / n
    }

    pub fn encode(&self, x: [i64; 3]) -> GroupElement {
        self.coords.encode(&x)
    }

    pub fn encode_word(&self, w: [i64; 4]) -> GroupElement {
        self.encode(word_vector(w))
    }

    /// `alpha(t_i)`.
    pub fn generator(&self, i: usize) -> GroupElement {
        self.encode(GENERATORS[i])
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let d = self.coords.moduli;
        GroupElement([0, 1, 2].map(|i| (a.0[i] + b.0[i]) % d[i]))
    }

    pub fn neg(&self, a: GroupElement) -> GroupElement {
        let d = self.coords.moduli;
        GroupElement([0, 1, 2].map(|i| (d[i] - a.0[i]) % d[i]))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement([0; 3])
    }

    /// Position in the lexicographic enumeration of `G`.
    pub fn index_of(&self, g: GroupElement) -> usize {
        let d = self.coords.moduli;
        ((g.0[0] * d[1] + g.0[1]) * d[2] + g.0[2]) as usize
    }

    pub fn element_at(&self, idx: usize) -> GroupElement {
        let d = self.coords.moduli;
        let idx = idx as u64;
        GroupElement([idx / (d[1] * d[2]), (idx / d[2]) % d[1], idx % d[2]])
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(|i| self.element_at(i))
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        self.coords.element_order(g)
    }

    /// Order of `|Z^3 / (Ker alpha + span(extra))|`.
    pub fn quotient_order(&self, extra: &[[i64; 3]]) -> u64 {
        self.quotient_by(extra).order()
    }

    fn quotient_by(&self, extra: &[[i64; 3]]) -> SmithCoordinates {
        let mut rows = self.kernel.row_vecs();
        rows.extend(extra.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
        SmithCoordinates::new(&Matrix::from_rows(rows, 3)).expect("contains a full-rank kernel")
    }

    /// Order of the image of `word` in `G / <images of modulo>`.
    pub fn element_order_in_quotient(&self, word: [i64; 4], modulo: &[[i64; 4]]) -> u64 {
        let extra: Vec<[i64; 3]> = modulo.iter().map(|w| word_vector(*w)).collect();
        let c = self.quotient_by(&extra);
        c.element_order(c.encode(&word_vector(word)))
    }

    /// The same lattice written in the relabelled basis `t'_i = t_{perm[i]}`.
    pub fn permuted(&self, perm: [usize; 4]) -> FiniteQuotient {
        let p = permutation_matrix(perm);
        let k = &self.kernel * &p;
        Self::build(&k, Constructor::Matrix).expect("relabelling keeps the kernel nonsingular")
    }
}

impl fmt::Display for FiniteQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hermite)
    }
}

/// Matrix taking old additive coordinates to those of the basis `t'_i = t_{perm[i]}`.
pub fn permutation_matrix(perm: [usize; 4]) -> IntMatrix {
    let mut p = Matrix::zeros(3, 3);
    for k in 0..3 {
        let mut lift = [0i64; 4];
        lift[k + 1] = 1;
        for i in 1..4 {
            p[(k, i - 1)] = BigInt::from(lift[perm[i]] - lift[perm[0]]);
        }
    }
    p
}

/// All 24 permutations of `(0, 1, 2, 3)` in lexicographic order.
pub fn all_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    for &x in &p {
                        seen[x] = true;
                    }
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn cofactor_gcd(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    let mut g = BigInt::zero();
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a[(r, c)].clone())
                        .collect()
                })
                .collect();
            let minor = Matrix::from_rows(rows, n - 1).determinant();
            g = g.gcd(&minor);
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn trivial_and_fermat() {
        let q = FiniteQuotient::from_kernel_matrix(&Matrix::identity(3)).unwrap();
        assert_eq!(q.order(), 1);
        let f = FiniteQuotient::fermat(3).unwrap();
        assert_eq!(f.factors(), [3, 3, 3]);
        assert_eq!((f.order(), f.exponent()), (27, 3));
        assert_eq!(FiniteQuotient::fermat(1).unwrap().order(), 1);
    }

    #[test]
    fn singular_kernel_rejected() {
        let k = km(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert!(matches!(
            FiniteQuotient::from_kernel_matrix(&k),
            Err(Error::SingularKernel)
        ));
    }

    #[test]
    fn product_kernel_order() {
        let k = km(&[&[0, 3, 1], &[8, 0, 0], &[0, 8, 0]]);
        assert_eq!(FiniteQuotient::from_kernel_matrix(&k).unwrap().order(), 64);
        let d = FiniteQuotient::diagonal([2, 4, 4]).unwrap();
        assert_eq!((d.order(), d.factors()), (32, [2, 4, 4]));
    }

    #[test]
    fn encoding_respects_relation() {
        let q = FiniteQuotient::from_kernel_matrix(&km(&[&[4, 7, 1], &[8, 0, 0], &[0, 8, 0]]))
            .unwrap();
        let sum = (0..4).fold(q.identity(), |acc, i| q.add(acc, q.generator(i)));
        assert_eq!(sum, q.identity());
        for i in 0..q.kernel().rows() {
            let r = q.kernel().row(i);
            let x = [0, 1, 2].map(|j| r[j].to_i64().unwrap());
            assert_eq!(q.encode(x), q.identity());
        }
        let all: std::collections::HashSet<_> = q.elements().collect();
        assert_eq!(all.len() as u64, q.order());
        for (i, g) in q.elements().enumerate() {
            assert_eq!(q.index_of(g), i);
        }
    }

    #[test]
    fn cyclic_constructor() {
        let q = FiniteQuotient::cyclic(5, [2, 1, 1, 1]).unwrap();
        assert_eq!(q.factors(), [1, 1, 5]);
        assert!(FiniteQuotient::cyclic(6, [1, 1, 1, 1]).is_err());
        assert!(FiniteQuotient::cyclic(4, [0, 2, 2, 0]).is_err());
        let q = FiniteQuotient::cyclic(12, [8, 1, 0, 3]).unwrap();
        assert!(q.is_cyclic_group() && q.order() == 12);
    }

    #[test]
    fn exponent_matrices() {
        let f = FiniteQuotient::from_exponent_matrix(&Matrix::diagonal(
            4,
            4,
            &[4, 4, 4, 4].map(BigInt::from),
        ))
        .unwrap();
        assert_eq!(f.canonical_kernel(), FiniteQuotient::fermat(4).unwrap().canonical_kernel());
        let neg = km(&[&[1, -1, 1, 0], &[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1]]);
        assert!(matches!(
            FiniteQuotient::from_exponent_matrix(&neg),
            Err(Error::ExponentMatrix { condition: 1, .. })
        ));
        let a = km(&[&[1, 1, 1, 0], &[0, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 0, 1]]);
        let q = FiniteQuotient::from_exponent_matrix(&a).unwrap();
        let det = a.determinant().abs();
        let m = (det / cofactor_gcd(&a)).to_u64().unwrap();
        assert_eq!(q.quotient_order(&[[m as i64, 0, 0], [0, m as i64, 0], [0, 0, m as i64]]), q.order());
        assert_eq!(m % q.exponent(), 0);
    }

    #[test]
    fn permutation_round_trip() {
        let q = FiniteQuotient::from_kernel_matrix(&km(&[&[6, 1, 2], &[8, 0, 8], &[0, 0, 16]]))
            .unwrap();
        for p in all_permutations() {
            let r = q.permuted(p);
            assert_eq!(r.factors(), q.factors());
            // t'_i = t_{p[i]}
            for i in 0..4 {
                assert_eq!(r.element_order(r.generator(i)), q.element_order(q.generator(p[i])));
            }
        }
        assert_eq!(all_permutations().len(), 24);
    }

    #[test]
    fn orders_in_quotients() {
        let f = FiniteQuotient::fermat(5).unwrap();
        assert_eq!(f.element_order_in_quotient([0, 1, 0, 0], &[]), 5);
        assert_eq!(f.element_order_in_quotient([0, 1, 0, 0], &[[0, 1, 0, 0]]), 1);
        let d = FiniteQuotient::diagonal([2, 4, 4]).unwrap();
        // n1: order of t1 in G / <t2 t3>
        assert_eq!(d.element_order_in_quotient([0, 1, 0, 0], &[[0, 0, 1, 1]]), 2);
    }
}
