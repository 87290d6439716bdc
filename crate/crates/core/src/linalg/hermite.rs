use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;

/// Row-style Hermite normal form `u * a == h`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows
/// sit at the bottom. `u` is unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: Matrix<BigInt>,
    pub u: Matrix<BigInt>,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(a: &Matrix<BigInt>) -> HermiteForm {
    hnf_impl(a, true)
}

fn hnf_impl(a: &Matrix<BigInt>, track: bool) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = if track {
        Matrix::identity(m)
    } else {
        Matrix::zeros(0, 0)
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let best = (row..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].magnitude().cmp(h[(j, col)].magnitude()));
            let Some(p) = best else { break };
            h.swap_rows(row, p);
            if track {
                u.swap_rows(row, p);
            }
            let mut done = true;
            for i in row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = &h[(i, col)] / &h[(row, col)];
                h.sub_row_multiple(i, row, &q);
                if track {
                    u.sub_row_multiple(i, row, &q);
                }
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            let minus = BigInt::from(-1);
            h.scale_row(row, &minus);
            if track {
                u.scale_row(row, &minus);
            }
        }
        let p = h[(row, col)].clone();
        for i in 0..row {
            let q = h[(i, col)].div_floor(&p);
            if !q.is_zero() {
                h.sub_row_multiple(i, row, &q);
                if track {
                    u.sub_row_multiple(i, row, &q);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    HermiteForm {
        h,
        u,
        rank: row,
        pivots,
    }
}

/// Hermite form without the transform.
pub fn hermite_only(a: &Matrix<BigInt>) -> Matrix<BigInt> {
    let f = hnf_impl(a, false);
    f.h.select_rows(&(0..f.rank).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix<BigInt>) -> HermiteForm {
        let f = hermite_normal_form(a);
        assert_eq!(&f.u * a, f.h);
        assert_eq!(f.u.determinant().magnitude(), &1u32.into());
        for (r, &c) in f.pivots.iter().enumerate() {
            let p = &f.h[(r, c)];
            assert!(p.is_positive());
            for i in 0..r {
                assert!(!f.h[(i, c)].is_negative() && &f.h[(i, c)] < p);
            }
        }
        f
    }

    #[test]
    fn already_reduced() {
        let a = Matrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(check(&a).h, a);
    }

    #[test]
    fn small_reduction() {
        let a = Matrix::from_i64_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(check(&a).h, Matrix::from_i64_rows(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn scalar_lattice() {
        let a = Matrix::from_i64_rows(&[&[0, 0, 5], &[5, 0, 0], &[0, 5, 0]]);
        assert_eq!(
            check(&a).h,
            Matrix::from_i64_rows(&[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]])
        );
    }

    #[test]
    fn rank_deficient() {
        let a = Matrix::from_i64_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 0], &[3, 1, 0]]);
        let f = check(&a);
        assert_eq!(f.rank, 2);
        assert!(f.h.is_zero_row(2) && f.h.is_zero_row(3));
        assert_eq!(hermite_only(&a).rows(), 2);
    }
}
