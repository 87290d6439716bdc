//! Layer-by-layer bound on `Tors B(alpha)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::Error;
use crate::quotient::{all_permutations, FiniteQuotient};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBoundParams {
    pub permutation: [usize; 4],
    /// `m_i`, `i = 1, 2, 3`.
    pub m: [u64; 3],
    pub n: [u64; 3],
    /// `n_jk` indexed by the complementary `i`.
    pub n_jk: [u64; 3],
    pub n_bar: [u64; 3],
    /// `p_2, p_3`.
    pub p: [u64; 2],
    pub p_bar: [u64; 2],
    pub q_bar: u64,
    pub s_bar: u64,
    /// `(q̄, s̄)`, `(p̄2, p̄3)`, `(n̄1, n̄2, n̄3)`.
    pub bound_layers: [Vec<u64>; 3],
}

impl TorsionBoundParams {
    /// Order of the bounding group.
    pub fn product(&self) -> u64 {
        self.bound_layers.iter().flatten().product()
    }

    /// Number of nontrivial cyclic summands across all layers.
    pub fn length(&self) -> usize {
        self.bound_layers.iter().flatten().filter(|&&x| x > 1).count()
    }

    pub fn layer_orders(&self) -> [u64; 3] {
        [0, 1, 2].map(|i| self.bound_layers[i].iter().product())
    }
}

fn exact_div(a: u64, b: u64, what: &str) -> Result<u64, Error> {
    if b == 0 || a % b != 0 {
        return Err(Error::Assertion(format!("{what} = {a}/{b} is not an integer")));
    }
    Ok(a / b)
}

/// Word with `+1` at the listed indices.
fn word(idx: &[usize]) -> [i64; 4] {
    let mut w = [0; 4];
    for &i in idx {
        w[i] += 1;
    }
    w
}

/// Bound parameters after relabelling `t'_i = t_{perm[i]}`.
pub fn torsion_bound(q: &FiniteQuotient, perm: [usize; 4]) -> Result<TorsionBoundParams, Error> {
    let q = q.permuted(perm);
    let s = q.subgroup_orders();
    let others = |i: usize| -> (usize, usize) {
        match i {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        }
    };
    let m = [1, 2, 3].map(|i| q.element_order(q.generator(i)));
    let n = [1, 2, 3].map(|i| q.element_order_in_quotient(word(&[i]), &[word(&[0, i])]));
    let n_jk = [1, 2, 3].map(|i| {
        let (j, _) = others(i);
        q.element_order_in_quotient(word(&[j]), &[word(&[0, i])])
    });
    let mut n_bar = [1; 3];
    for i in 1..=3 {
        let (j, k) = others(i);
        n_bar[i - 1] = exact_div(n[i - 1], s.pair(j, k), &format!("n̄{i}"))?;
        let other = exact_div(n_jk[i - 1], s.pair(0, i), &format!("n̄{i}"))?;
        if other != n_bar[i - 1] {
            return Err(Error::Assertion(format!(
                "n̄{i}: n_i/|G_jk| = {} but n_jk/|G_0i| = {other}",
                n_bar[i - 1]
            )));
        }
    }
    let p = [2, 3].map(|i| n[i - 1].gcd(&n_jk[i - 1]));
    let p_bar = [
        exact_div(p[0], s.single(3), "p̄2")?,
        exact_div(p[1], s.single(2), "p̄3")?,
    ];
    let q_bar = exact_div(p[0].gcd(&p[1]), s.single(1), "q̄")?;
    let s_bar = if s.delta == 1 {
        let s2 = n[1].lcm(&n_jk[1]);
        let s3 = n[2].lcm(&n_jk[2]);
        exact_div(s2.gcd(&s3), s.single(1), "s̄")?
    } else {
        1
    };
    Ok(TorsionBoundParams {
        permutation: perm,
        m,
        n,
        n_jk,
        n_bar,
        p,
        p_bar,
        q_bar,
        s_bar,
        bound_layers: [vec![q_bar, s_bar], p_bar.to_vec(), n_bar.to_vec()],
    })
}

/// Bounds for all 24 relabellings, in lexicographic permutation order.
pub fn all_torsion_bounds(q: &FiniteQuotient) -> Result<Vec<TorsionBoundParams>, Error> {
    all_permutations().into_iter().map(|p| torsion_bound(q, p)).collect()
}

/// The bound with the smallest product, then fewest nontrivial summands,
/// then smallest permutation.
pub fn best_torsion_bound(q: &FiniteQuotient) -> Result<TorsionBoundParams, Error> {
    let all = all_torsion_bounds(q)?;
    Ok(all
        .into_iter()
        .min_by_key(|b| (b.product(), b.length(), b.permutation))
        .expect("24 permutations"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_parameters() {
        for m in [[2, 4, 4], [2, 6, 6], [2, 8, 8], [4, 6, 12]] {
            let q = FiniteQuotient::diagonal(m).unwrap();
            let b = torsion_bound(&q, [0, 1, 2, 3]).unwrap();
            assert_eq!(b.n_bar, [1; 3]);
            assert_eq!(b.p_bar, [1; 2]);
            assert_eq!(b.q_bar, 1);
            let g = |a: u64, b: u64| a.gcd(&b);
            let l = g(m[0], m[1]).lcm(&g(m[0], m[2])).lcm(&g(m[1], m[2]));
            assert_eq!(b.s_bar, l / g(g(m[0], m[1]), m[2]));
        }
    }

    #[test]
    fn fermat_is_trivial() {
        for m in 1..7 {
            let b = best_torsion_bound(&FiniteQuotient::fermat(m).unwrap()).unwrap();
            assert_eq!(b.product(), 1);
        }
    }
}
