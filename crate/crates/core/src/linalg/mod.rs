//! Exact linear algebra over Euclidean domains.

mod abelian;
mod hermite;
mod lattice;
mod matrix;
mod smith;
pub mod sparse;

pub use abelian::{abelian_subquotient, element_order, AbelianGroupStructure};
pub use hermite::{hermite_normal_form, hermite_only, HermiteForm};
pub use lattice::{
    lattice_basis, lattice_contains, lattice_intersection, left_kernel, same_lattice,
    solve_in_lattice, unimodular_inverse,
};
pub use matrix::Matrix;
pub use smith::{smith_diagonal, smith_normal_form, SmithForm};
pub use sparse::{is_divisor_chain, sparse_cokernel, sparse_quotient, sparse_subquotient, SparseMatrix};

use crate::ring::{Field, Poly};

/// Monic invariant factors of a polynomial matrix over a field, including
/// trailing zeros for rank deficiency.
pub fn poly_smith_normal_form<K: Field>(m: &Matrix<Poly<K>>) -> Vec<Poly<K>> {
    smith_diagonal(m)
}
