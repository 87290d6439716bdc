//! `pi_1 = Ker alpha / sum_{i<j} (GG_ij ∩ Ker alpha)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{lattice_intersection, solve_in_lattice, AbelianGroupStructure, Matrix};
use crate::quotient::{FiniteQuotient, GENERATORS, PAIRS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Result {
    pub structure: AbelianGroupStructure,
    pub order: u64,
}

pub fn pi1(q: &FiniteQuotient) -> Result<Pi1Result, Error> {
    let basis = q.canonical_kernel();
    let mut coords = Vec::new();
    for (i, j) in PAIRS {
        let plane = Matrix::from_rows(
            [GENERATORS[i], GENERATORS[j]]
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            3,
        );
        let n = lattice_intersection(&plane, basis);
        for r in 0..n.rows() {
            let x = solve_in_lattice(basis, n.row(r)).ok_or_else(|| {
                Error::Assertion(format!(
                    "intersection generator {:?} of pair ({i},{j}) is not in Ker alpha = {basis}",
                    n.row(r)
                ))
            })?;
            coords.push(x);
        }
    }
    let structure = AbelianGroupStructure::cokernel(&Matrix::from_rows(coords, 3));
    if !structure.is_finite() || structure.torsion_factors.len() > 1 {
        return Err(Error::Assertion(format!(
            "pi_1 = {structure} is not finite cyclic for Ker alpha = {basis}"
        )));
    }
    let order = structure.torsion_order();
    let height = q.height();
    if height % order != 0 {
        return Err(Error::Assertion(format!(
            "|pi_1| = {order} does not divide height {height}"
        )));
    }
    Ok(Pi1Result { structure, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(rows: &[&[i64]]) -> u64 {
        let q = FiniteQuotient::from_kernel_matrix(&Matrix::from_i64_rows(rows)).unwrap();
        pi1(&q).unwrap().order
    }

    #[test]
    fn special_classes_are_simply_connected() {
        assert_eq!(pi1(&FiniteQuotient::fermat(6).unwrap()).unwrap().order, 1);
        assert_eq!(pi1(&FiniteQuotient::diagonal([2, 4, 4]).unwrap()).unwrap().order, 1);
        assert_eq!(pi1(&FiniteQuotient::cyclic(12, [8, 1, 0, 3]).unwrap()).unwrap().order, 1);
    }

    #[test]
    fn nontrivial_examples() {
        assert_eq!(order_of(&[&[4, 7, 1], &[8, 0, 0], &[0, 8, 0]]), 2);
        assert_eq!(order_of(&[&[6, 1, 2], &[8, 0, 8], &[0, 0, 16]]), 4);
        assert_eq!(order_of(&[&[0, 3, 1], &[8, 0, 0], &[0, 8, 0]]), 1);
    }
}
