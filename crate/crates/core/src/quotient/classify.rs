use num_bigint::BigInt;
use serde::Serialize;

use super::{all_permutations, FiniteQuotient, GENERATORS};
use crate::linalg::{same_lattice, Matrix};

/// Index pairs `0 <= i < j <= 3` in the order used by [`SubgroupOrders::pairs`].
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Orders of `G_ij`, `G_i` and `G_=`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupOrders {
    /// `|G_ij|` for the pairs of [`PAIRS`].
    pub pairs: [u64; 6],
    /// `|G_1|, |G_2|, |G_3|`.
    pub singles: [u64; 3],
    pub equal: u64,
    pub delta: u8,
}

impl SubgroupOrders {
    pub fn pair(&self, i: usize, j: usize) -> u64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let k = PAIRS.iter().position(|&p| p == (a, b)).expect("distinct indices");
        self.pairs[k]
    }

    /// `|G_i|` for `i = 1, 2, 3`.
    pub fn single(&self, i: usize) -> u64 {
        self.singles[i - 1]
    }

    /// `sum |G_ij| + sum |G_i| - 3 - delta`.
    pub fn rank_k_formula(&self) -> i64 {
        let s: u64 = self.pairs.iter().sum::<u64>() + self.singles.iter().sum::<u64>();
        s as i64 - 3 - self.delta as i64
    }
}

fn add(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl FiniteQuotient {
    pub fn subgroup_orders(&self) -> SubgroupOrders {
        let v = GENERATORS;
        let pairs = PAIRS.map(|(i, j)| self.quotient_order(&[v[i], v[j]]));
        let singles = [1, 2, 3].map(|i| {
            let (j, k) = match i {
                1 => (2, 3),
                2 => (1, 3),
                _ => (1, 2),
            };
            self.quotient_order(&[add(v[i], v[j]), add(v[i], v[k])])
        });
        let equal = self.quotient_order(&[add(v[1], v[2]), add(v[1], v[3]), add(v[2], v[3])]);
        assert!(equal == 1 || equal == 2, "|G_=| = {equal}");
        SubgroupOrders {
            pairs,
            singles,
            equal,
            delta: (equal - 1) as u8,
        }
    }

    pub fn delta(&self) -> u8 {
        self.quotient_order(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]) as u8 - 1
    }

    pub fn classify(&self) -> Classification {
        let m = self.exponent();
        let is_fermat = self.hermite == Matrix::diagonal(3, 3, &[BigInt::from(m), BigInt::from(m), BigInt::from(m)]);
        let unramified_index = (0..4).find(|&i| self.generator(i) == self.identity());
        let mut diagonal = None;
        for perm in all_permutations() {
            let q = self.permuted(perm);
            let orders = [1, 2, 3].map(|i| q.element_order(q.generator(i)));
            let d = Matrix::diagonal(3, 3, &orders.map(BigInt::from));
            if same_lattice(q.kernel(), &d) {
                diagonal = Some(DiagonalWitness {
                    permutation: perm,
                    m: orders,
                });
                break;
            }
        }
        let height = self.height();
        let e = BigInt::from(m);
        let cube = &e * &e * &e;
        let ratio = &cube / BigInt::from(self.order());
        assert!(
            &ratio * BigInt::from(self.order()) == cube
                && (BigInt::from(height) * BigInt::from(height)) % &ratio == BigInt::from(0),
            "(exp G)^3/|G| must be an integer dividing height^2"
        );
        Classification {
            is_fermat,
            fermat_m: is_fermat.then_some(m),
            is_unramified: unramified_index.is_some(),
            unramified_index,
            is_cyclic: self.is_cyclic_group(),
            is_diagonal: diagonal.is_some(),
            diagonal_witness: diagonal,
            height,
        }
    }
}

/// A permutation `p` with `Ker alpha = <m1 t'_1, m2 t'_2, m3 t'_3>` for `t'_i = t_{p[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalWitness {
    pub permutation: [usize; 4],
    pub m: [u64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_fermat: bool,
    pub fermat_m: Option<u64>,
    pub is_unramified: bool,
    /// Some `i` with `alpha(t_i) = 1`.
    pub unramified_index: Option<usize>,
    pub is_cyclic: bool,
    pub is_diagonal: bool,
    pub diagonal_witness: Option<DiagonalWitness>,
    pub height: u64,
}

impl Classification {
    pub fn is_special(&self) -> bool {
        self.is_fermat || self.is_unramified || self.is_cyclic || self.is_diagonal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[i64]]) -> FiniteQuotient {
        FiniteQuotient::from_kernel_matrix(&Matrix::from_i64_rows(rows)).unwrap()
    }

    #[test]
    fn fermat_orders() {
        for m in 1..7u64 {
            let s = FiniteQuotient::fermat(m).unwrap().subgroup_orders();
            assert_eq!(s.pairs, [m; 6]);
            assert_eq!(s.singles, [m; 3]);
            assert_eq!(s.delta, (m % 2 == 0) as u8);
        }
    }

    #[test]
    fn cyclic_orders() {
        let s = FiniteQuotient::cyclic(6, [1, 1, 2, 2]).unwrap().subgroup_orders();
        let mut p = s.pairs;
        p.sort_unstable();
        assert_eq!(p, [1, 1, 1, 1, 1, 2]);
        assert_eq!(s.singles, [3, 1, 1]);
        assert_eq!(s.delta, 0);
    }

    #[test]
    fn fermat_classification() {
        let c = FiniteQuotient::fermat(4).unwrap().classify();
        assert!(c.is_fermat && c.is_diagonal && !c.is_cyclic && !c.is_unramified);
        assert_eq!(c.height, 1);
        let c = FiniteQuotient::fermat(1).unwrap().classify();
        assert!(c.is_fermat && c.is_cyclic && c.is_unramified);
    }

    #[test]
    fn cyclic_study_kernel() {
        let q = from_rows(&[&[1, 1, 0], &[3, 0, 3], &[0, 0, 4]]);
        let c = q.classify();
        assert!(c.is_cyclic);
        assert_eq!(q.order(), 12);
    }

    #[test]
    fn diagonal_under_permutation() {
        // <2 t0, 4 t2, 4 t3> written in the basis t1, t2, t3
        let q = from_rows(&[&[-2, -2, -2], &[0, 4, 0], &[0, 0, 4]]);
        let c = q.classify();
        assert!(c.is_diagonal);
        let w = c.diagonal_witness.unwrap();
        let mut m = w.m;
        m.sort_unstable();
        assert_eq!(m, [2, 4, 4]);
    }

    #[test]
    fn height_bounds_pi1_example() {
        let q = from_rows(&[&[4, 7, 1], &[8, 0, 0], &[0, 8, 0]]);
        let c = q.classify();
        assert!(c.height >= 2);
        assert!(!c.is_special());
    }
}
