//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` words; matrices are stored as rows. Every
//! routine is deterministic: the same input always yields bit-identical
//! output, and the only freedom (which pivot to prefer) is controlled by
//! [`TieBreak`].

use std::fmt;

use crate::error::{Error, Result};

/// Which end of the column order wins when elimination has a choice.
///
/// `Canonical` scans columns left to right, so free coordinates of a solution
/// are the rightmost non-pivot columns. `Reversed` scans right to left; it
/// exists so that downstream constructions can be re-run under a different
/// but equally valid set of choices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    #[default]
    Canonical,
    Reversed,
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adds `other` into `self` (XOR).
    pub fn add_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in vector sum");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last_one(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate().rev() {
            if word != 0 {
                return Some(w * 64 + 63 - word.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    /// Coordinates in reverse order.
    pub fn reversed(&self) -> BitVec {
        BitVec::from_indices(self.len, self.ones().map(|i| self.len - 1 - i))
    }

    /// Picks out the coordinates listed in `idx`, in that order.
    pub fn select(&self, idx: &[usize]) -> BitVec {
        BitVec::from_indices(idx.len(), idx.iter().enumerate().filter(|(_, &i)| self.get(i)).map(|(k, _)| k))
    }

    /// Inverse of [`select`](Self::select): places coordinate `k` at `idx[k]`.
    pub fn scatter(&self, idx: &[usize], len: usize) -> BitVec {
        BitVec::from_indices(len, self.ones().map(|k| idx[k]))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A `rows × cols` matrix over GF(2). A matrix represents the map `x ↦ M·x`
/// from a `cols`-dimensional space to a `rows`-dimensional one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Matrix { rows, cols }
    }

    pub fn from_bit_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| BitVec::from_bits(r)).collect())
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match row count");
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].flip(j)
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows(), (0..self.rows()).filter(|&i| self.rows[i].get(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn apply(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "vector length does not match column count");
        BitVec::from_indices(self.rows(), (0..self.rows()).filter(|&i| self.rows[i].dot(x)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.add_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Matrix { rows, cols: other.cols }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows(), self.cols), (other.rows(), other.cols));
        Matrix {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    fn with_reversed_columns(&self) -> Matrix {
        Matrix {
            rows: self.rows.iter().map(BitVec::reversed).collect(),
            cols: self.cols,
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Linearly independent vectors in reduced row-echelon form: each vector owns
/// one pivot column where it alone among the vectors has a 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    ambient_dim: usize,
    vectors: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        EchelonBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        rref(&Matrix::identity(ambient_dim)).0
    }

    /// Echelon basis of the span of `vectors`.
    pub fn span_of(ambient_dim: usize, vectors: &[BitVec]) -> Self {
        rref(&Matrix::from_rows(ambient_dim, vectors.to_vec())).0
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[BitVec] {
        &self.vectors
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rest = v.clone();
        let mut coords = BitVec::zeros(self.dim());
        for (k, (&p, b)) in self.pivots.iter().zip(&self.vectors).enumerate() {
            if v.get(p) {
                rest.add_assign(b);
                coords.set(k, true);
            }
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_all(&self, other: &EchelonBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Linear combination of the basis vectors selected by `coords`.
    pub fn combine(&self, coords: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.ambient_dim);
        for k in coords.ones() {
            out.add_assign(&self.vectors[k]);
        }
        out
    }
}

/// Incremental elimination that remembers how each stored vector was formed
/// from the generators inserted so far. Used to read off coordinates with
/// respect to an arbitrary (not echelon) generating list.
#[derive(Clone, Debug)]
pub struct Reducer {
    ambient_dim: usize,
    generators: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Reducer {
    pub fn new(ambient_dim: usize) -> Self {
        Reducer {
            ambient_dim,
            generators: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, Vec<usize>) {
        let mut rest = v.clone();
        let mut used = Vec::new();
        for (k, (p, row, _)) in self.rows.iter().enumerate() {
            if rest.get(*p) {
                rest.add_assign(row);
                used.push(k);
            }
        }
        (rest, used)
    }

    /// Adds a generator. Returns `false` (and stores nothing) when `v` is
    /// already in the span; the generator index is consumed either way.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let index = self.generators;
        self.generators += 1;
        let (rest, used) = self.reduce(v);
        let Some(p) = rest.first_one() else {
            return false;
        };
        let mut combo = BitVec::unit(self.generators, index);
        for k in used {
            let c = grow(&self.rows[k].2, self.generators);
            combo.add_assign(&c);
        }
        self.rows.push((p, rest, combo));
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Expresses `v` as a sum of inserted generators (indexed by insertion
    /// order), or `None` if `v` is outside their span.
    pub fn decompose(&self, v: &BitVec) -> Option<BitVec> {
        let (rest, used) = self.reduce(v);
        if !rest.is_zero() {
            return None;
        }
        let mut combo = BitVec::zeros(self.generators);
        for k in used {
            combo.add_assign(&grow(&self.rows[k].2, self.generators));
        }
        Some(combo)
    }
}

fn grow(v: &BitVec, len: usize) -> BitVec {
    if v.len() == len {
        v.clone()
    } else {
        BitVec::from_indices(len, v.ones())
    }
}

/// Reduced row-echelon form of the row space of `m`, with its rank.
pub fn rref(m: &Matrix) -> (EchelonBasis, usize) {
    let (basis, _) = eliminate(m.rows.clone(), m.cols, m.cols);
    let rank = basis.dim();
    (basis, rank)
}

pub fn rref_with(m: &Matrix, tie: TieBreak) -> (EchelonBasis, usize) {
    match tie {
        TieBreak::Canonical => rref(m),
        TieBreak::Reversed => {
            let (b, rank) = rref(&m.with_reversed_columns());
            let basis = EchelonBasis {
                ambient_dim: b.ambient_dim,
                vectors: b.vectors.iter().map(BitVec::reversed).collect(),
                pivots: b.pivots.iter().map(|&p| m.cols - 1 - p).collect(),
            };
            (basis, rank)
        }
    }
}

/// Gauss-Jordan elimination of `rows`, choosing pivots only among the first
/// `pivot_limit` columns. Returns the nonzero reduced rows (as a basis over
/// `width` columns) and whether some row became zero on the pivot columns
/// while staying nonzero beyond them.
fn eliminate(mut rows: Vec<BitVec>, width: usize, pivot_limit: usize) -> (EchelonBasis, bool) {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_limit {
        let Some(found) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != next && r.get(col) {
                r.add_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let inconsistent = rows[next..].iter().any(|r| !r.is_zero());
    rows.truncate(next);
    (
        EchelonBasis {
            ambient_dim: width,
            vectors: rows,
            pivots,
        },
        inconsistent,
    )
}

/// Basis of `{x : m·x = 0}`.
pub fn kernel_basis(m: &Matrix) -> EchelonBasis {
    kernel_basis_with(m, TieBreak::Canonical)
}

pub fn kernel_basis_with(m: &Matrix, tie: TieBreak) -> EchelonBasis {
    let (r, _) = rref_with(m, tie);
    let n = m.cols();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in r.pivot_cols() {
            v[p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let gens: Vec<BitVec> = free
        .iter()
        .map(|&f| {
            let mut x = BitVec::unit(n, f);
            for (row, &p) in r.vectors().iter().zip(r.pivot_cols()) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect();
    rref_with(&Matrix::from_rows(n, gens), tie).0
}

/// Particular solution of `m·x = b` with every free coordinate set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &BitVec) -> Result<Option<BitVec>> {
    solve_with(m, b, TieBreak::Canonical)
}

pub fn solve_with(m: &Matrix, b: &BitVec, tie: TieBreak) -> Result<Option<BitVec>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension {
            context: "solve",
            expected: m.rows(),
            found: b.len(),
        });
    }
    if tie == TieBreak::Reversed {
        return Ok(solve_with(&m.with_reversed_columns(), b, TieBreak::Canonical)?.map(|x| x.reversed()));
    }
    let n = m.cols();
    let augmented: Vec<BitVec> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = BitVec::from_indices(n + 1, r.ones());
            if b.get(i) {
                a.set(n, true);
            }
            a
        })
        .collect();
    let (reduced, inconsistent) = eliminate(augmented, n + 1, n);
    if inconsistent {
        return Ok(None);
    }
    let mut x = BitVec::zeros(n);
    for (row, &p) in reduced.vectors().iter().zip(reduced.pivot_cols()) {
        if row.get(n) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

/// Representatives completing `sub` to a basis of `amb`, chosen greedily
/// from `amb`'s vectors by pivot column.
pub fn quotient_basis(sub: &EchelonBasis, amb: &EchelonBasis) -> Result<Vec<BitVec>> {
    quotient_basis_with(sub, amb, TieBreak::Canonical)
}

pub fn quotient_basis_with(sub: &EchelonBasis, amb: &EchelonBasis, tie: TieBreak) -> Result<Vec<BitVec>> {
    if sub.ambient_dim() != amb.ambient_dim() {
        return Err(Error::Dimension {
            context: "quotient_basis",
            expected: amb.ambient_dim(),
            found: sub.ambient_dim(),
        });
    }
    if !amb.contains_all(sub) {
        return Err(Error::NotSubspace);
    }
    let mut acc = Reducer::new(amb.ambient_dim());
    for v in sub.vectors() {
        acc.insert(v);
    }
    // Prefer low pivots, or high ones when reversed, whatever order `amb` was built in.
    let mut order: Vec<(usize, &BitVec)> = amb.pivot_cols().iter().copied().zip(amb.vectors()).collect();
    order.sort_by_key(|&(p, _)| match tie {
        TieBreak::Canonical => p as isize,
        TieBreak::Reversed => -(p as isize),
    });
    let mut reps = Vec::new();
    for (_, v) in order {
        if acc.insert(v) {
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_rows(
            cols,
            (0..rows)
                .map(|_| BitVec::from_indices(cols, (0..cols).filter(|_| rng.gen_bool(0.4))))
                .collect(),
        )
    }

    #[test]
    fn rref_zero_and_identity() {
        let (b, r) = rref(&Matrix::zeros(3, 3));
        assert_eq!((b.dim(), r), (0, 0));
        let (b, r) = rref(&Matrix::identity(4));
        assert_eq!(r, 4);
        for (k, v) in b.vectors().iter().enumerate() {
            assert_eq!(*v, BitVec::unit(4, k));
        }
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_bit_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(rref(&m).1, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(5)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).dim(), 3);
        let k = kernel_basis(&Matrix::from_bit_rows(&[&[1, 1]]));
        assert_eq!(k.vectors(), &[BitVec::from_bits(&[1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = BitVec::from_bits(&[1, 0, 1]);
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(3, 3), &b).unwrap(), None);
        let m = Matrix::from_bit_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(solve(&m, &BitVec::from_bits(&[1, 1])).unwrap(), Some(BitVec::from_bits(&[0, 1])));
        assert!(matches!(solve(&m, &BitVec::zeros(3)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn solve_free_coordinates_are_zero() {
        // x0 + x1 = 1 has solutions 10 and 01; canonical leaves x1 free.
        let m = Matrix::from_bit_rows(&[&[1, 1]]);
        let b = BitVec::from_bits(&[1]);
        assert_eq!(solve(&m, &b).unwrap(), Some(BitVec::from_bits(&[1, 0])));
        assert_eq!(solve_with(&m, &b, TieBreak::Reversed).unwrap(), Some(BitVec::from_bits(&[0, 1])));
    }

    #[test]
    fn quotient_examples() {
        let amb = EchelonBasis::full(2);
        assert!(quotient_basis(&amb, &amb).unwrap().is_empty());
        let empty = EchelonBasis::empty(2);
        assert_eq!(quotient_basis(&empty, &amb).unwrap(), amb.vectors().to_vec());
        let sub = EchelonBasis::span_of(2, &[BitVec::from_bits(&[1, 1])]);
        let reps = quotient_basis(&sub, &amb).unwrap();
        assert_eq!(reps.len(), 1);
        // Both candidates (1,0) and (0,1) lie in the single nonzero coset.
        let other = reps[0].add(&BitVec::from_bits(&[1, 1]));
        assert!(!sub.contains(&reps[0]) && !sub.contains(&other));
        assert_eq!(reps, quotient_basis(&sub, &amb).unwrap());
        let outside = EchelonBasis::span_of(3, &[BitVec::from_bits(&[0, 0, 1])]);
        let amb3 = EchelonBasis::span_of(3, &[BitVec::from_bits(&[1, 0, 0])]);
        assert!(matches!(quotient_basis(&outside, &amb3), Err(Error::NotSubspace)));
    }

    #[test]
    fn rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..250 {
            let rows = rng.gen_range(0..=32);
            let cols = rng.gen_range(1..=32);
            let m = random_matrix(&mut rng, rows, cols);
            let rank = rref(&m).1;
            let ker = kernel_basis(&m);
            assert_eq!(rank + ker.dim(), cols);
            for v in ker.vectors() {
                assert!(m.apply(v).is_zero());
            }
            assert_eq!(rank, rref_with(&m, TieBreak::Reversed).1);
        }
    }

    #[test]
    fn solve_random_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..250 {
            let rows = rng.gen_range(1..=20);
            let cols = rng.gen_range(1..=20);
            let m = random_matrix(&mut rng, rows, cols);
            let x0 = BitVec::from_indices(cols, (0..cols).filter(|_| rng.gen_bool(0.5)));
            let b = m.apply(&x0);
            for tie in [TieBreak::Canonical, TieBreak::Reversed] {
                let x = solve_with(&m, &b, tie).unwrap().expect("consistent by construction");
                assert_eq!(m.apply(&x), b);
            }
        }
    }

    #[test]
    fn rref_idempotent_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 12, 15);
            let (b, _) = rref(&m);
            let (again, _) = rref(&Matrix::from_rows(15, b.vectors().to_vec()));
            assert_eq!(b, again);
            assert_eq!(b, rref(&m).0);
            let pivots = b.pivot_cols();
            assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn reducer_decomposes() {
        let gens = [BitVec::from_bits(&[1, 1, 0]), BitVec::from_bits(&[0, 1, 1])];
        let mut r = Reducer::new(3);
        for g in &gens {
            assert!(r.insert(g));
        }
        let v = BitVec::from_bits(&[1, 0, 1]);
        assert_eq!(r.decompose(&v), Some(BitVec::from_bits(&[1, 1])));
        assert_eq!(r.decompose(&BitVec::from_bits(&[1, 0, 0])), None);
    }

    #[test]
    fn reversed_quotient_prefers_high_pivots() {
        // Cycles {e0, e1} modulo the boundary e0 + e1.
        let sub = EchelonBasis::span_of(2, &[BitVec::from_bits(&[1, 1])]);
        for tie in [TieBreak::Canonical, TieBreak::Reversed] {
            let amb = kernel_basis_with(&Matrix::zeros(0, 2), tie);
            assert_eq!(quotient_basis_with(&sub, &amb, TieBreak::Canonical).unwrap(), vec![BitVec::unit(2, 0)]);
            assert_eq!(quotient_basis_with(&sub, &amb, TieBreak::Reversed).unwrap(), vec![BitVec::unit(2, 1)]);
        }
    }
}
