//! Sublattices of `Z^n` given by generator rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::hermite::{hermite_normal_form, hermite_only};
use super::Matrix;

/// Basis (Hermite form rows) of the lattice spanned by the rows of `gens`.
pub fn lattice_basis(gens: &Matrix<BigInt>) -> Matrix<BigInt> {
    hermite_only(gens)
}

/// Basis of `{x : x * a == 0}`, in Hermite form.
pub fn left_kernel(a: &Matrix<BigInt>) -> Matrix<BigInt> {
    let f = hermite_normal_form(a);
    let idx: Vec<usize> = (f.rank..a.rows()).collect();
    let k = f.u.select_rows(&idx);
    if k.rows() == 0 {
        return k;
    }
    hermite_only(&k)
}

/// Generators of `span(b1) ∩ span(b2)` via the left kernel of the stacked matrix.
pub fn lattice_intersection(b1: &Matrix<BigInt>, b2: &Matrix<BigInt>) -> Matrix<BigInt> {
    assert_eq!(b1.cols(), b2.cols(), "lattices live in different ambients");
    let n = b1.cols();
    if b1.rows() == 0 || b2.rows() == 0 {
        return Matrix::zeros(0, n);
    }
    let k = left_kernel(&b1.vstack(b2));
    let head: Vec<Vec<BigInt>> = (0..k.rows())
        .map(|i| k.row(i)[..b1.rows()].to_vec())
        .collect();
    let coeffs = Matrix::from_rows(head, b1.rows());
    lattice_basis(&(&coeffs * b1))
}

/// `x` with `x * b == v`, or `None` if `v` is not in the row span of `b`.
/// The rows of `b` must be linearly independent.
pub fn solve_in_lattice(b: &Matrix<BigInt>, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.cols(), v.len());
    let f = hermite_normal_form(b);
    assert_eq!(f.rank, b.rows(), "solve_in_lattice needs a basis");
    let mut rest = v.to_vec();
    let mut y = vec![BigInt::zero(); f.rank];
    for (r, &c) in f.pivots.iter().enumerate() {
        if rest[c].is_zero() {
            continue;
        }
        let (q, rem) = rest[c].div_rem(&f.h[(r, c)]);
        if !rem.is_zero() {
            return None;
        }
        for (j, x) in rest.iter_mut().enumerate() {
            let h = &f.h[(r, j)];
            if !h.is_zero() {
                *x -= &q * h;
            }
        }
        y[r] = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(f.u.left_mul_vec(&y))
}

/// Membership in the row span of arbitrary generators.
pub fn lattice_contains(gens: &Matrix<BigInt>, v: &[BigInt]) -> bool {
    let b = lattice_basis(gens);
    if b.rows() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    solve_in_lattice(&b, v).is_some()
}

/// Equality of row spans.
pub fn same_lattice(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> bool {
    lattice_basis(a) == lattice_basis(b)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &Matrix<BigInt>) -> Matrix<BigInt> {
    let f = hermite_normal_form(u);
    assert!(
        f.h == Matrix::identity(u.rows()),
        "matrix is not unimodular"
    );
    f.u
}
