use num_traits::ToPrimitive;

use super::GroupRingElement as R;
use crate::linalg::{sparse_cokernel, AbelianGroupStructure, SparseMatrix};
use crate::quotient::FiniteQuotient;

/// An element of a free `Z[G]`-module: one coefficient per generator.
pub type ModuleElement = Vec<R>;

/// Finitely presented `Z[G]`-module.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub generator_names: Vec<&'static str>,
    pub group: FiniteQuotient,
    pub relations: Vec<ModuleElement>,
}

impl ModulePresentation {
    pub fn generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn columns(&self) -> usize {
        self.generators() * self.group.order() as usize
    }

    /// Rows `g * x` for every `x` in `elements` (element-major, then `g` in
    /// enumeration order). Column `k * |G| + idx(h)` holds the coefficient
    /// of `h` in front of generator `k`.
    pub fn orbit_matrix(&self, elements: &[ModuleElement]) -> SparseMatrix {
        let q = &self.group;
        let n = q.order() as usize;
        let mut out = SparseMatrix::new(self.columns());
        for x in elements {
            assert_eq!(x.len(), self.generators(), "element has the wrong arity");
            for g in q.elements() {
                let mut row = Vec::new();
                for (k, f) in x.iter().enumerate() {
                    for (h, c) in f.terms() {
                        let col = k * n + q.index_of(q.add(*h, g));
                        row.push((col, c.to_i64().expect("coefficient fits in i64")));
                    }
                }
                out.push_entries(row);
            }
        }
        out
    }

    /// The `(#relations * |G|) x (#generators * |G|)` integer relation matrix.
    pub fn expansion(&self) -> SparseMatrix {
        self.orbit_matrix(&self.relations)
    }

    /// Generator `k` as a module element.
    pub fn basis_element(&self, k: usize) -> ModuleElement {
        let mut x = vec![R::zero(); self.generators()];
        x[k] = R::one(&self.group);
        x
    }
}

/// `(rank, torsion)` of the module as an abelian group.
pub fn module_rank_torsion(p: &ModulePresentation) -> (usize, AbelianGroupStructure) {
    let s = sparse_cokernel(&p.expansion());
    (s.free_rank, s.torsion())
}

pub(crate) fn scaled(q: &FiniteQuotient, f: &R, x: &ModuleElement) -> ModuleElement {
    x.iter().map(|c| f.mul(c, q)).collect()
}

pub(crate) fn sum(a: ModuleElement, b: ModuleElement) -> ModuleElement {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Module element with the given coefficients on generators `offset + 0, 1, 2`
/// of a presentation with `arity` generators.
fn on_c(arity: usize, offset: usize, coeffs: [R; 3]) -> ModuleElement {
    let mut x = vec![R::zero(); arity];
    for (i, c) in coeffs.into_iter().enumerate() {
        x[offset + i] = c;
    }
    x
}

/// `(t2 t3 - 1) c1`, `(t1 t3 - 1) c2`, `(t1 t2 - 1) c3`.
fn bb_relations(q: &FiniteQuotient, arity: usize, offset: usize) -> Vec<ModuleElement> {
    let one = R::one(q);
    let t = |i| R::t(q, i);
    let tt = |i, j| t(i).mul(&t(j), q) - one.clone();
    vec![
        on_c(arity, offset, [tt(2, 3), R::zero(), R::zero()]),
        on_c(arity, offset, [R::zero(), tt(1, 3), R::zero()]),
        on_c(arity, offset, [R::zero(), R::zero(), tt(1, 2)]),
    ]
}

/// `Am(alpha)` on generators `a1, a2, a3, c1, c2, c3`.
pub fn present_am(q: &FiniteQuotient) -> ModulePresentation {
    let d = |i| R::t_minus_one(q, i);
    let z = R::zero;
    let mut relations = bb_relations(q, 6, 3);
    relations.push(vec![z(), d(3), -d(2), d(3), z(), z()]);
    relations.push(vec![d(3), z(), -d(1), z(), d(3), z()]);
    relations.push(vec![-d(2), d(1), z(), z(), z(), d(1)]);
    ModulePresentation {
        generator_names: vec!["a1", "a2", "a3", "c1", "c2", "c3"],
        group: q.clone(),
        relations,
    }
}

/// The elements `c''_1, c''_2, c''_3` on generators `offset..offset + 3`.
pub(crate) fn c_double_prime(q: &FiniteQuotient, arity: usize, offset: usize) -> [ModuleElement; 3] {
    let d = |i| R::t_minus_one(q, i);
    let z = R::zero;
    [
        on_c(arity, offset, [d(1).mul(&d(3), q), z(), z()]),
        on_c(arity, offset, [z(), d(2).mul(&d(3), q), z()]),
        on_c(arity, offset, [z(), z(), d(3).mul(&d(1), q)]),
    ]
}

/// `B'(alpha) = Bm(exp G) ⊗ Z[G]` on generators `c1, c2, c3`.
pub fn present_bprime(q: &FiniteQuotient) -> ModulePresentation {
    let mut relations = bb_relations(q, 3, 0);
    let [c1, c2, c3] = c_double_prime(q, 3, 0);
    let minus = |x: ModuleElement| x.into_iter().map(|f| -f).collect::<Vec<_>>();
    relations.push(sum(sum(c1, minus(c2)), minus(c3)));
    ModulePresentation {
        generator_names: vec!["c1", "c2", "c3"],
        group: q.clone(),
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_quotient_is_free() {
        let q = FiniteQuotient::fermat(1).unwrap();
        let (rank, tors) = module_rank_torsion(&present_am(&q));
        assert_eq!((rank, tors.is_trivial()), (6, true));
        let (rank, tors) = module_rank_torsion(&present_bprime(&q));
        assert_eq!((rank, tors.is_trivial()), (3, true));
    }

    #[test]
    fn expansion_shape_and_translates() {
        let q = FiniteQuotient::diagonal([2, 2, 3]).unwrap();
        let p = present_am(&q);
        let e = p.expansion();
        let n = q.order() as usize;
        assert_eq!((e.rows.len(), e.cols), (6 * n, 6 * n));
        // translating by g permutes the columns inside each generator block
        let g = q.generator(2);
        for r in 0..6 {
            let base = &e.rows[r * n];
            let moved = &e.rows[r * n + q.index_of(g)];
            let mut image: Vec<(usize, i64)> = base
                .iter()
                .map(|&(c, v)| {
                    let (blk, idx) = (c / n, c % n);
                    (blk * n + q.index_of(q.add(q.element_at(idx), g)), v)
                })
                .collect();
            image.sort_unstable();
            assert_eq!(&image, moved);
        }
    }

    #[test]
    fn fermat_two_rank() {
        let q = FiniteQuotient::fermat(2).unwrap();
        let (rank, tors) = module_rank_torsion(&present_am(&q));
        assert!(tors.is_trivial());
        assert_eq!(rank as i64 - 8 + 1, 14);
    }

    #[test]
    fn diagonal_bprime_torsion() {
        let q = FiniteQuotient::diagonal([2, 4, 4]).unwrap();
        let (_, tors) = module_rank_torsion(&present_bprime(&q));
        assert_eq!(tors.torsion_factors, vec![2]);
    }
}
