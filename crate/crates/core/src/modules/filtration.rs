//! The filtration `0 = B0 ⊂ B1 ⊂ B2 ⊂ B3 ⊂ B4 = B`.
//!
//! `B3` is generated by `c'_1 = (t3-1)c1`, `c'_2 = (t3-1)c2`, `c'_3 = (t1-1)c3`,
//! `B2` by `c''_i` and `B1` by `u = (t2 - t3^-1) c''_2`. All subgroups are the
//! integer spans of full `G`-orbits inside the expansion of the ambient module.

use serde::Serialize;

use super::presentation::{c_double_prime, present_am, present_bprime, scaled, ModuleElement, ModulePresentation};
use super::GroupRingElement as R;
use crate::error::Error;
use crate::linalg::{sparse_subquotient, AbelianGroupStructure, SparseMatrix};
use crate::quotient::FiniteQuotient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    /// `B(alpha)` as the submodule of `Am(alpha)` generated by `c1, c2, c3`.
    AmEmbedded,
    /// `B'(alpha)` with its own presentation.
    Bprime,
}

/// Ambient module and the generators of `B_k` for `k = 0..=4`.
pub struct Filtration {
    pub ambient: ModulePresentation,
    pub levels: [Vec<ModuleElement>; 5],
    relations: SparseMatrix,
}

impl Filtration {
    pub fn new(q: &FiniteQuotient, kind: ModuleKind) -> Self {
        let (ambient, offset) = match kind {
            ModuleKind::AmEmbedded => (present_am(q), 3),
            ModuleKind::Bprime => (present_bprime(q), 0),
        };
        let arity = ambient.generators();
        let c: Vec<ModuleElement> = (0..3).map(|i| ambient.basis_element(offset + i)).collect();
        let d = |i| R::t_minus_one(q, i);
        let c1 = vec![
            scaled(q, &d(3), &c[0]),
            scaled(q, &d(3), &c[1]),
            scaled(q, &d(1), &c[2]),
        ];
        let c2 = c_double_prime(q, arity, offset);
        let u = scaled(q, &(R::t(q, 2) - R::t_inv(q, 3)), &c2[1]);
        let relations = ambient.expansion();
        Filtration {
            ambient,
            levels: [Vec::new(), vec![u], c2.to_vec(), c1, c],
            relations,
        }
    }

    fn orbit(&self, level: usize) -> SparseMatrix {
        self.ambient.orbit_matrix(&self.levels[level])
    }

    /// `B_level / B_{level-1}`.
    pub fn layer(&self, level: usize) -> Result<AbelianGroupStructure, Error> {
        check_level(level)?;
        sparse_subquotient(&self.relations, &self.orbit(level), &self.orbit(level - 1))
    }

    /// `B_level` itself.
    pub fn member(&self, level: usize) -> Result<AbelianGroupStructure, Error> {
        if level > 4 {
            return Err(Error::InvalidParameter(format!("filtration level {level}")));
        }
        sparse_subquotient(&self.relations, &self.orbit(level), &self.orbit(0))
    }
}

fn check_level(level: usize) -> Result<(), Error> {
    if (1..=4).contains(&level) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "filtration level must be 1..=4, got {level}"
        )))
    }
}

/// Structure of `B_level / B_{level-1}` for the chosen module.
pub fn filtration_subquotient(
    q: &FiniteQuotient,
    kind: ModuleKind,
    level: usize,
) -> Result<AbelianGroupStructure, Error> {
    check_level(level)?;
    Filtration::new(q, kind).layer(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_layers() {
        for m in 1..4u64 {
            let q = FiniteQuotient::fermat(m).unwrap();
            let delta = (m % 2 == 0) as usize;
            let f = Filtration::new(&q, ModuleKind::AmEmbedded);
            let m = m as usize;
            let expect = [m - 1 - delta, 2 * (m - 1), 3 * (m - 1), 3 * m];
            for level in 1..=4 {
                let s = f.layer(level).unwrap();
                assert_eq!(s, AbelianGroupStructure::free(expect[level - 1]), "level {level}");
            }
        }
    }

    #[test]
    fn bad_level() {
        let q = FiniteQuotient::fermat(2).unwrap();
        assert!(filtration_subquotient(&q, ModuleKind::Bprime, 0).is_err());
        assert!(filtration_subquotient(&q, ModuleKind::Bprime, 5).is_err());
    }
}
