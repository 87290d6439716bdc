//! Sparse unit-pivot elimination for large integer relation matrices.
//!
//! Expanded group-ring presentations have entries in `{-1, 0, 1}` and a
//! handful of nonzeros per row, so most of the Smith form comes from unit
//! pivots. Those are eliminated sparsely (shortest row first, sparsest column
//! among its unit entries); whatever is left goes to the dense Smith form.
//!
//! The same elimination can carry *passive* rows: vectors that are reduced
//! modulo the relations but never used as pivots. Their images give the
//! subgroup they generate in the quotient, which is how subquotients of
//! large modules are computed.
//!
//! Arithmetic runs in `i64` with overflow checks and is redone in `BigInt`
//! if any entry overflows.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::abelian::AbelianGroupStructure;
use super::hermite::hermite_normal_form;
use super::lattice::lattice_basis;
use super::smith::{smith_diagonal, smith_normal_form};
use super::Matrix;
use crate::error::Error;

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

/// Sparse integer matrix in row-list form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    pub cols: usize,
    pub rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    /// Adds a row given as unsorted `(column, value)` pairs; duplicates are summed.
    pub fn push_entries(&mut self, mut entries: Vec<(usize, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: SparseRow = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        self.rows.push(row);
    }

    pub fn from_dense(a: &Matrix<BigInt>) -> Self {
        let mut s = SparseMatrix::new(a.cols());
        for i in 0..a.rows() {
            s.push_entries(
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !Zero::is_zero(*x))
                    .map(|(j, x)| (j, x.to_i64().expect("entry fits in i64")))
                    .collect(),
            );
        }
        s
    }

    pub fn to_dense(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn append(&mut self, other: &SparseMatrix) {
        assert_eq!(self.cols, other.cols);
        self.rows.extend(other.rows.iter().cloned());
    }
}

/// Entry type of the elimination. Every operation reports overflow as `None`.
trait Entry: Clone + Debug + PartialEq + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
    fn nil(&self) -> bool;
    fn unit(&self) -> bool;
    /// `a - f * b`
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn modulo(&self, m: &Self) -> Self;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn nil(&self) -> bool {
        *self == 0
    }
    fn unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(f.checked_mul(*b)?)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn modulo(&self, m: &Self) -> Self {
        self.rem_euclid(*m)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn sub_mul(a: &Self, f: &Self, b: &Self) -> Option<Self> {
        Some(a - f * b)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn modulo(&self, m: &Self) -> Self {
        self.mod_floor(m)
    }
}

#[derive(Debug)]
struct Overflow;

type Row<T> = Vec<(usize, T)>;

/// `target - f * src`; calls `fresh` for every column introduced by `src`.
fn axpy<T: Entry>(
    target: &[(usize, T)],
    f: &T,
    src: &[(usize, T)],
    mut fresh: impl FnMut(usize),
) -> Result<Row<T>, Overflow> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    let zero = T::from_i64(0);
    while i < target.len() || j < src.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = src.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = T::sub_mul(&zero, f, &src[j].1).ok_or(Overflow)?;
            if !v.nil() {
                fresh(cj);
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = T::sub_mul(&target[i].1, f, &src[j].1).ok_or(Overflow)?;
            if !v.nil() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn lookup<T>(row: &[(usize, T)], c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
}

fn has_unit<T: Entry>(row: &[(usize, T)], allowed: impl Fn(usize) -> bool) -> bool {
    row.iter().any(|(c, v)| allowed(*c) && v.unit())
}

/// Rows plus a lazy column index (entries may be stale; always re-checked).
struct RowStore<T> {
    rows: Vec<Option<Row<T>>>,
    col_index: Vec<Vec<usize>>,
}

impl<T: Entry> RowStore<T> {
    fn new(cols: usize, rows: Vec<Row<T>>) -> Self {
        let mut col_index = vec![Vec::new(); cols];
        for (i, r) in rows.iter().enumerate() {
            for (c, _) in r {
                col_index[*c].push(i);
            }
        }
        RowStore {
            rows: rows.into_iter().map(Some).collect(),
            col_index,
        }
    }

    /// Live rows with a nonzero in column `c`.
    fn rows_in_col(&mut self, c: usize) -> Vec<usize> {
        let mut list = std::mem::take(&mut self.col_index[c]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&i| {
            self.rows[i]
                .as_ref()
                .is_some_and(|r| lookup(r, c).is_some())
        });
        self.col_index[c] = list.clone();
        list
    }
}

/// Phase-one state: relations with a pivot queue, passive rows riding along.
struct Elimination<T> {
    rel: RowStore<T>,
    passive: RowStore<T>,
    queue: BTreeSet<(usize, usize)>,
    eliminated: Vec<bool>,
    unit_pivots: usize,
}

impl<T: Entry> Elimination<T> {
    fn new(cols: usize, rel: Vec<Row<T>>, passive: Vec<Row<T>>) -> Self {
        let mut queue = BTreeSet::new();
        for (i, r) in rel.iter().enumerate() {
            if has_unit(r, |_| true) {
                queue.insert((r.len(), i));
            }
        }
        Elimination {
            rel: RowStore::new(cols, rel),
            passive: RowStore::new(cols, passive),
            queue,
            eliminated: vec![false; cols],
            unit_pivots: 0,
        }
    }

    fn run(&mut self) -> Result<(), Overflow> {
        while let Some(&(len, r)) = self.queue.iter().next() {
            self.queue.remove(&(len, r));
            let row = self.rel.rows[r].take().expect("queued row is live");
            // sparsest column among the unit entries
            let (c, p) = row
                .iter()
                .filter(|(_, v)| v.unit())
                .min_by_key(|(c, _)| self.rel.col_index[*c].len())
                .map(|(c, v)| (*c, v.clone()))
                .expect("queued row has a unit");
            for i in self.rel.rows_in_col(c) {
                let target = self.rel.rows[i].take().unwrap();
                let a = lookup(&target, c).unwrap().clone();
                let f = T::mul(&a, &p).ok_or(Overflow)?;
                if has_unit(&target, |_| true) {
                    self.queue.remove(&(target.len(), i));
                }
                let idx = &mut self.rel.col_index;
                let new = axpy(&target, &f, &row, |col| idx[col].push(i))?;
                if has_unit(&new, |_| true) {
                    self.queue.insert((new.len(), i));
                }
                self.rel.rows[i] = if new.is_empty() { None } else { Some(new) };
            }
            for i in self.passive.rows_in_col(c) {
                let target = self.passive.rows[i].take().unwrap();
                let a = lookup(&target, c).unwrap().clone();
                let f = T::mul(&a, &p).ok_or(Overflow)?;
                let idx = &mut self.passive.col_index;
                let new = axpy(&target, &f, &row, |col| idx[col].push(i))?;
                self.passive.rows[i] = Some(new);
            }
            self.rel.col_index[c].clear();
            self.passive.col_index[c].clear();
            self.eliminated[c] = true;
            self.unit_pivots += 1;
        }
        Ok(())
    }
}

/// Images of passive rows in the quotient `Z^n / rowspan(relations)`.
///
/// Coordinates `0..moduli.len()` are torsion coordinates (`Z/moduli[i]`,
/// every modulus at least 2); the remaining `free_rank` coordinates are free.
#[derive(Clone, Debug)]
pub struct QuotientImage {
    pub structure: AbelianGroupStructure,
    pub moduli: Vec<BigInt>,
    pub free_rank: usize,
    pub images: Vec<Vec<(usize, BigInt)>>,
}

impl QuotientImage {
    pub fn is_zero_image(&self, i: usize) -> bool {
        self.images[i].is_empty()
    }
}

fn to_rows<T: Entry>(m: &SparseMatrix) -> Vec<Row<T>> {
    m.rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, T::from_i64(v))).collect())
        .collect()
}

fn quotient_with<T: Entry>(
    rel: &SparseMatrix,
    passive: &SparseMatrix,
    want_images: bool,
) -> Result<QuotientImage, Overflow> {
    let n = rel.cols;
    let mut e = Elimination::<T>::new(n, to_rows(rel), to_rows(passive));
    e.run()?;

    let residual: Vec<&Row<T>> = e.rel.rows.iter().flatten().collect();
    let mut active: Vec<usize> = residual.iter().flat_map(|r| r.iter().map(|x| x.0)).collect();
    active.sort_unstable();
    active.dedup();
    let mut pos = vec![usize::MAX; n];
    for (k, &c) in active.iter().enumerate() {
        pos[c] = k;
    }
    let mut dense = Matrix::<BigInt>::zeros(residual.len(), active.len());
    for (i, r) in residual.iter().enumerate() {
        for (c, v) in r.iter() {
            dense[(i, pos[*c])] = v.to_big();
        }
    }

    // free columns untouched by the residual block
    let idle: Vec<usize> = (0..n)
        .filter(|&c| !e.eliminated[c] && pos[c] == usize::MAX)
        .collect();

    let (diag, v) = if want_images && !active.is_empty() {
        let s = smith_normal_form(&dense);
        (s.diagonal(), Some(s.v))
    } else {
        (smith_diagonal(&dense), None)
    };
    let k = active.len();
    let diag_at = |j: usize| diag.get(j).cloned().unwrap_or_else(BigInt::zero);

    // new coordinate layout: torsion from the residual, then residual-free, then idle
    let mut torsion_cols = Vec::new();
    let mut free_cols = Vec::new();
    for j in 0..k {
        let d = diag_at(j);
        if d.is_zero() {
            free_cols.push(j);
        } else if !d.is_one() {
            torsion_cols.push(j);
        }
    }
    let moduli: Vec<BigInt> = torsion_cols.iter().map(|&j| diag_at(j)).collect();
    let t = moduli.len();
    let free_rank = free_cols.len() + idle.len();
    let mut slot = vec![None; k];
    for (i, &j) in torsion_cols.iter().enumerate() {
        slot[j] = Some(i);
    }
    for (i, &j) in free_cols.iter().enumerate() {
        slot[j] = Some(t + i);
    }
    let mut idle_slot = vec![usize::MAX; n];
    for (i, &c) in idle.iter().enumerate() {
        idle_slot[c] = t + free_cols.len() + i;
    }

    let mut images = Vec::new();
    if want_images {
        for r in e.passive.rows.iter() {
            let r = r.as_ref().unwrap();
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            let mut head = vec![BigInt::zero(); k];
            let mut any = false;
            for (c, val) in r {
                if pos[*c] != usize::MAX {
                    head[pos[*c]] = val.to_big();
                    any = true;
                } else {
                    debug_assert!(!e.eliminated[*c]);
                    acc.push((idle_slot[*c], val.to_big()));
                }
            }
            if any {
                let y = v.as_ref().unwrap().left_mul_vec(&head);
                for (j, val) in y.into_iter().enumerate() {
                    let Some(s) = slot[j] else { continue };
                    let val = if s < t { val.mod_floor(&moduli[s]) } else { val };
                    if !val.is_zero() {
                        acc.push((s, val));
                    }
                }
            }
            acc.sort_unstable_by_key(|x| x.0);
            images.push(acc);
        }
    }

    let orders: Vec<u64> = moduli
        .iter()
        .map(|d| d.to_u64().expect("invariant factor exceeds u64"))
        .collect();
    let mut structure = AbelianGroupStructure {
        free_rank,
        torsion_factors: orders,
    };
    structure.torsion_factors.sort_unstable();
    Ok(QuotientImage {
        structure,
        moduli,
        free_rank,
        images,
    })
}

/// Structure of `Z^cols / rowspan(rel)`.
pub fn sparse_cokernel(rel: &SparseMatrix) -> AbelianGroupStructure {
    let none = SparseMatrix::new(rel.cols);
    match quotient_with::<i64>(rel, &none, false) {
        Ok(q) => q.structure,
        Err(Overflow) => quotient_with::<BigInt>(rel, &none, false).unwrap().structure,
    }
}

/// Quotient `Z^cols / rowspan(rel)` together with the images of `passive`.
pub fn sparse_quotient(rel: &SparseMatrix, passive: &SparseMatrix) -> QuotientImage {
    assert_eq!(rel.cols, passive.cols);
    match quotient_with::<i64>(rel, passive, true) {
        Ok(q) => q,
        Err(Overflow) => quotient_with::<BigInt>(rel, passive, true).unwrap(),
    }
}

/// Rank of a sparse matrix (number of nonzero Smith invariants).
pub fn sparse_rank(a: &SparseMatrix) -> usize {
    a.cols - sparse_cokernel(a).free_rank
}

/// Subgroup of a [`QuotientImage`]'s group generated by its passive images.
pub fn generated_subgroup(q: &QuotientImage) -> AbelianGroupStructure {
    let t = q.moduli.len();
    let total = t + q.free_rank;
    let small: Option<Vec<Row<i64>>> = q
        .images
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
        .collect();
    let small_moduli: Option<Vec<i64>> = q.moduli.iter().map(ToPrimitive::to_i64).collect();
    if let (Some(rows), Some(m)) = (small, small_moduli) {
        if let Ok(s) = subgroup_with::<i64>(total, &m, rows) {
            return s;
        }
    }
    let rows: Vec<Row<BigInt>> = q.images.clone();
    subgroup_with::<BigInt>(total, &q.moduli, rows).unwrap()
}

fn subgroup_with<T: Entry>(
    total: usize,
    moduli: &[T],
    rows: Vec<Row<T>>,
) -> Result<AbelianGroupStructure, Overflow> {
    let t = moduli.len();
    let free = |c: usize| c >= t;
    let mut store = RowStore::new(total, rows);
    let mut queue = BTreeSet::new();
    for (i, r) in store.rows.iter().enumerate() {
        let r = r.as_ref().unwrap();
        if has_unit(r, free) {
            queue.insert((r.len(), i));
        }
    }
    let mut free_found = 0;
    while let Some(&(len, r)) = queue.iter().next() {
        queue.remove(&(len, r));
        let row = store.rows[r].take().unwrap();
        let (c, p) = row
            .iter()
            .filter(|(c, v)| free(*c) && v.unit())
            .min_by_key(|(c, _)| store.col_index[*c].len())
            .map(|(c, v)| (*c, v.clone()))
            .unwrap();
        for i in store.rows_in_col(c) {
            let target = store.rows[i].take().unwrap();
            if has_unit(&target, free) {
                queue.remove(&(target.len(), i));
            }
            let a = lookup(&target, c).unwrap().clone();
            let f = T::mul(&a, &p).ok_or(Overflow)?;
            let idx = &mut store.col_index;
            let mut new = axpy(&target, &f, &row, |col| idx[col].push(i))?;
            for e in new.iter_mut() {
                if e.0 < t {
                    e.1 = e.1.modulo(&moduli[e.0]);
                }
            }
            new.retain(|e| !e.1.nil());
            if has_unit(&new, free) {
                queue.insert((new.len(), i));
            }
            store.rows[i] = if new.is_empty() { None } else { Some(new) };
        }
        store.col_index[c].clear();
        free_found += 1;
    }

    // dense remainder: (span(Y) + span(D)) / span(D) over the columns Y touches
    let rest: Vec<&Row<T>> = store.rows.iter().flatten().collect();
    let mut cols: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.is_empty() {
        return Ok(AbelianGroupStructure::free(free_found));
    }
    let mut pos = vec![usize::MAX; total];
    for (k, &c) in cols.iter().enumerate() {
        pos[c] = k;
    }
    let width = cols.len();
    let mut y = Matrix::<BigInt>::zeros(rest.len(), width);
    for (i, r) in rest.iter().enumerate() {
        for (c, v) in r.iter() {
            y[(i, pos[*c])] = v.to_big();
        }
    }
    let tors: Vec<usize> = cols.iter().copied().filter(|&c| c < t).collect();
    let mut d = Matrix::<BigInt>::zeros(tors.len(), width);
    for (i, &c) in tors.iter().enumerate() {
        d[(i, pos[c])] = moduli[c].to_big();
    }
    let w = lattice_basis(&y.vstack(&d));
    let coords = express_in_basis(&w, &d);
    let inner = AbelianGroupStructure::cokernel(&coords);
    Ok(AbelianGroupStructure {
        free_rank: inner.free_rank + free_found,
        torsion_factors: inner.torsion_factors,
    })
}

/// Coordinates of each row of `v` in the Hermite basis `w` (rows must be members).
fn express_in_basis(w: &Matrix<BigInt>, v: &Matrix<BigInt>) -> Matrix<BigInt> {
    let f = hermite_normal_form(w);
    debug_assert_eq!(f.rank, w.rows());
    let mut out = Matrix::zeros(v.rows(), w.rows());
    for i in 0..v.rows() {
        let mut rest = v.row(i).to_vec();
        for (r, &c) in f.pivots.iter().enumerate() {
            if rest[c].is_zero() {
                continue;
            }
            let (q, rem) = rest[c].div_rem(&f.h[(r, c)]);
            assert!(rem.is_zero(), "row is not in the lattice");
            for (j, x) in rest.iter_mut().enumerate() {
                let h = &f.h[(r, j)];
                if !h.is_zero() {
                    *x -= &q * h;
                }
            }
            out[(i, r)] = q;
        }
        assert!(rest.iter().all(Zero::is_zero), "row is not in the lattice");
    }
    // back to coordinates in `w` itself
    &out * &f.u
}

/// `(span(upper) + span(rel)) / (span(lower) + span(rel))` for sparse inputs.
///
/// Containment of `lower` in `upper + rel` is verified; the first offending
/// row of `lower` is reported.
pub fn sparse_subquotient(
    rel: &SparseMatrix,
    upper: &SparseMatrix,
    lower: &SparseMatrix,
) -> Result<AbelianGroupStructure, Error> {
    let mut big = rel.clone();
    big.append(upper);
    let check = sparse_quotient(&big, lower);
    if let Some(i) = (0..lower.rows.len()).find(|&i| !check.is_zero_image(i)) {
        return Err(Error::NotContained { index: i });
    }
    let mut small = rel.clone();
    small.append(lower);
    let q = sparse_quotient(&small, upper);
    Ok(generated_subgroup(&q))
}

/// Is `a` nonnegative and a divisor chain? Used by property tests.
pub fn is_divisor_chain(d: &[BigInt]) -> bool {
    d.iter().all(|x| !x.is_negative())
        && d.windows(2)
            .all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::abelian_subquotient;

    fn sm(cols: usize, rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&Matrix::from_i64(rows.len(), cols, &rows.concat()))
    }

    #[test]
    fn cokernel_matches_dense() {
        let a = Matrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = sparse_cokernel(&SparseMatrix::from_dense(&a));
        assert_eq!(s, AbelianGroupStructure::cokernel(&a));
        let b = Matrix::from_i64_rows(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 3, 0]]);
        let s = sparse_cokernel(&SparseMatrix::from_dense(&b));
        assert_eq!(s, AbelianGroupStructure { free_rank: 1, torsion_factors: vec![3] });
    }

    #[test]
    fn subquotient_matches_dense() {
        let rel = sm(3, &[&[0, 0, 4]]);
        let up = sm(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let lo = sm(3, &[&[2, 2, 0], &[0, 2, 2]]);
        let s = sparse_subquotient(&rel, &up, &lo).unwrap();
        let d = abelian_subquotient(3, &rel.to_dense(), &up.to_dense(), &lo.to_dense()).unwrap();
        assert_eq!(s, d);
        assert_eq!(s.torsion_factors, vec![2, 2]);
    }

    #[test]
    fn subquotient_rejects_non_members() {
        let rel = SparseMatrix::new(2);
        let up = sm(2, &[&[2, 0]]);
        let lo = sm(2, &[&[1, 0]]);
        assert!(matches!(
            sparse_subquotient(&rel, &up, &lo),
            Err(Error::NotContained { index: 0 })
        ));
    }

    #[test]
    fn overflow_falls_back() {
        // eliminating the first row squares the large entry
        let big = 1i64 << 40;
        let a = sm(3, &[&[1, big, 0], &[big, 0, 1]]);
        assert!(quotient_with::<i64>(&a, &SparseMatrix::new(3), false).is_err());
        assert_eq!(sparse_cokernel(&a), AbelianGroupStructure::free(1));
    }
}
