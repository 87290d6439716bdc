//! Dense Smith normal form over a Euclidean domain.
//!
//! Pivoting picks the nonzero entry of minimal Euclidean size in the active
//! submatrix (ties: lowest row, then lowest column). Divisibility of the
//! remaining block by the pivot is enforced before moving on, so the diagonal
//! comes out as a divisibility chain without a separate fix-up pass.


use super::Matrix;
use crate::ring::EuclideanDomain;

/// `u * a * v == d` with `u`, `v` invertible and `d` diagonal,
/// `d[0] | d[1] | ...`, every diagonal entry canonical (nonnegative / monic).
#[derive(Clone, Debug)]
pub struct SmithForm<R> {
    pub u: Matrix<R>,
    pub v: Matrix<R>,
    pub d: Matrix<R>,
}

impl<R: EuclideanDomain> SmithForm<R> {
    /// Diagonal entries `d[0], ..., d[min(rows, cols) - 1]`, trailing zeros included.
    pub fn diagonal(&self) -> Vec<R> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form<R: EuclideanDomain>(a: &Matrix<R>) -> SmithForm<R> {
    let mut work = Reduction::new(a.clone(), true);
    work.run();
    SmithForm {
        u: work.u.unwrap(),
        v: work.v.unwrap(),
        d: work.a,
    }
}

/// Diagonal of the Smith form without accumulating transforms.
pub fn smith_diagonal<R: EuclideanDomain>(a: &Matrix<R>) -> Vec<R> {
    let mut work = Reduction::new(a.clone(), false);
    work.run();
    let n = work.a.rows().min(work.a.cols());
    (0..n).map(|i| work.a[(i, i)].clone()).collect()
}

struct Reduction<R> {
    a: Matrix<R>,
    u: Option<Matrix<R>>,
    v: Option<Matrix<R>>,
}

impl<R: EuclideanDomain> Reduction<R> {
    fn new(a: Matrix<R>, transforms: bool) -> Self {
        let (m, n) = (a.rows(), a.cols());
        Reduction {
            a,
            u: transforms.then(|| Matrix::identity(m)),
            v: transforms.then(|| Matrix::identity(n)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn sub_row(&mut self, target: usize, source: usize, q: &R) {
        self.a.sub_row_multiple(target, source, q);
        if let Some(u) = &mut self.u {
            u.sub_row_multiple(target, source, q);
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &R) {
        self.a.sub_col_multiple(target, source, q);
        if let Some(v) = &mut self.v {
            v.sub_col_multiple(target, source, q);
        }
    }

    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(R::Size, usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let s = x.size();
                if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                    best = Some((s, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        for k in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.find_pivot(k) else {
                    return;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let pivot = self.a[(k, k)].clone();
                let mut dirty = false;
                for i in k + 1..m {
                    if self.a[(i, k)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(i, k)].div_rem_euclid(&pivot);
                    self.sub_row(i, k, &q);
                    dirty |= !r.is_zero();
                }
                for j in k + 1..n {
                    if self.a[(k, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(k, j)].div_rem_euclid(&pivot);
                    self.sub_col(j, k, &q);
                    dirty |= !r.is_zero();
                }
                if dirty {
                    continue;
                }
                // pivot must divide the rest of the block
                let offender = (k + 1..m).find(|&i| {
                    (k + 1..n).any(|j| !pivot.divides(&self.a[(i, j)]))
                });
                match offender {
                    Some(i) => {
                        let minus_one = -R::one();
                        self.sub_row(k, i, &minus_one);
                    }
                    None => break,
                }
            }
            let unit = self.a[(k, k)].canonical_unit();
            if !unit.is_one_unit() {
                self.a.scale_row(k, &unit);
                if let Some(u) = &mut self.u {
                    u.scale_row(k, &unit);
                }
            }
        }
    }
}

trait IsOneUnit {
    fn is_one_unit(&self) -> bool;
}

impl<R: EuclideanDomain> IsOneUnit for R {
    fn is_one_unit(&self) -> bool {
        *self == R::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Poly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &Matrix<BigInt>) -> SmithForm<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().magnitude() == &1u32.into());
        assert!(s.v.determinant().magnitude() == &1u32.into());
        let d = s.diagonal();
        for w in d.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check(&Matrix::identity(3));
        assert_eq!(s.diagonal(), z(&[1, 1, 1]));
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let a = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(check(&a).diagonal(), z(&[1, 6]));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = Matrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(check(&a).diagonal(), z(&[2, 6, 12]));
        let b = Matrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(check(&b).diagonal(), z(&[0, 0]));
        let c = Matrix::from_i64_rows(&[&[3], &[6], &[9]]);
        assert_eq!(check(&c).diagonal(), z(&[3]));
    }

    #[test]
    fn empty_matrix() {
        let e: Matrix<BigInt> = Matrix::zeros(0, 3);
        let s = smith_normal_form(&e);
        assert!(s.diagonal().is_empty());
        assert_eq!(s.v, Matrix::identity(3));
    }

    #[test]
    fn polynomial_chain() {
        let q = |c: &[i64]| {
            Poly::new(
                c.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect::<Vec<_>>(),
            )
        };
        // diag(t - 1, t + 1) -> (1, t^2 - 1)
        let a = Matrix::from_rows(vec![vec![q(&[-1, 1]), q(&[])], vec![q(&[]), q(&[1, 1])]], 2);
        assert_eq!(smith_diagonal(&a), vec![q(&[1]), q(&[-1, 0, 1])]);
        // diag(t - 1, (t - 1)(t + 1)) is already a chain
        let b = Matrix::from_rows(
            vec![vec![q(&[-1, 1]), q(&[])], vec![q(&[]), q(&[-1, 0, 1])]],
            2,
        );
        assert_eq!(smith_diagonal(&b), vec![q(&[-1, 1]), q(&[-1, 0, 1])]);
    }
}
