//! Invariant factors over `Q[t]` of matrices whose cokernel is killed by `t^m - 1`.
//!
//! `Q[t]/(t^m - 1)` is the product of the fields `Q[t]/Phi_d`, `d | m`, so every
//! invariant factor is a product of distinct `Phi_d`, and `Phi_d` divides exactly
//! the last `cols - rank M(zeta_d)` of them. Ranks are taken in `Z[t]/Phi_d` with
//! fraction-free elimination, which avoids the coefficient growth of Euclid over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::{cyclotomic, divisors, CyclotomicProduct};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::IntPoly;

fn reduce(f: &IntPoly, modulus: &IntPoly) -> IntPoly {
    f.div_rem_monic(modulus).1
}

fn primitive_row(row: &mut [IntPoly]) {
    let mut g = BigInt::zero();
    for f in row.iter() {
        for c in f.coeffs() {
            g = g.gcd(c);
        }
    }
    if g > BigInt::one() {
        for f in row.iter_mut() {
            *f = IntPoly::new(f.coeffs().iter().map(|c| c / &g).collect());
        }
    }
}

/// Rank of `a` evaluated at a primitive `d`-th root of unity.
pub fn rank_at_root(a: &Matrix<IntPoly>, d: u64) -> usize {
    let phi = cyclotomic(d);
    let mut rows: Vec<Vec<IntPoly>> = a
        .row_vecs()
        .into_iter()
        .map(|r| r.iter().map(|f| reduce(f, &phi)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..a.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = reduce(&(pivot.clone() * x.clone() - factor.clone() * y.clone()), &phi);
            }
            primitive_row(row);
        }
        rank += 1;
    }
    rank
}

/// Each column must own a row whose only entry divides `t^m - 1`.
fn check_annihilated(a: &Matrix<IntPoly>, m: u64) -> Result<(), Error> {
    let tm = IntPoly::t_pow_minus_one(m as usize);
    for j in 0..a.cols() {
        let owned = (0..a.rows()).any(|i| {
            let row = a.row(i);
            let f = &row[j];
            !f.is_zero()
                && f.is_monic()
                && row.iter().enumerate().all(|(k, g)| k == j || g.is_zero())
                && tm.div_rem_monic(f).1.is_zero()
        });
        if !owned {
            return Err(Error::Assertion(format!("column {j} is not killed by t^{m} - 1")));
        }
    }
    Ok(())
}

/// Invariant factors of `a` over `Q[t]`, ascending, as cyclotomic products.
pub fn smith_over_q(a: &Matrix<IntPoly>, m: u64) -> Result<Vec<CyclotomicProduct>, Error> {
    check_annihilated(a, m)?;
    let n = a.cols();
    let mut out = vec![CyclotomicProduct::default(); n];
    for d in divisors(m) {
        let r = rank_at_root(a, d);
        for f in out.iter_mut().skip(r) {
            f.multiply(d, 1);
        }
    }
    Ok(out)
}
