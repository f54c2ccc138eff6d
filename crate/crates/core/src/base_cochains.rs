//! Finite simplicial sets and normalized cochains on them with coefficients
//! in a finite graded GF(2) space.
//!
//! Only nondegenerate simplices are stored. A general simplex is a pair
//! `(x, η)` with `x` nondegenerate and `η` a surjective monotone map of
//! vertex lists, so faces of degenerate simplices are computed, not stored.
//! Cup products use the front-face/back-face split.

use std::collections::HashMap;

use rand::Rng;

use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Matrix};
use crate::graded::GradedBasis;
use crate::hochschild::{Cochain, GradedRing};

/// A simplex `x·η`: nondegenerate `x` of dimension `base_dim` with vertex map `η`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    base_dim: usize,
    id: usize,
    eta: Vec<usize>,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, id: usize) -> Self {
        Simplex {
            base_dim: dim,
            id,
            eta: (0..=dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.base_dim != self.dim()
    }

    /// `(dimension, index)` of the underlying nondegenerate simplex.
    pub fn base(&self) -> (usize, usize) {
        (self.base_dim, self.id)
    }

    /// Index among nondegenerate simplices, or `None` when degenerate.
    pub fn nondegenerate_id(&self) -> Option<usize> {
        (!self.is_degenerate()).then_some(self.id)
    }

    /// The degeneracy `s_j` of this simplex.
    pub fn degeneracy(&self, j: usize) -> Simplex {
        assert!(j <= self.dim());
        let eta = (0..=self.dim() + 1)
            .map(|i| self.eta[if i <= j { i } else { i - 1 }])
            .collect();
        Simplex {
            base_dim: self.base_dim,
            id: self.id,
            eta,
        }
    }
}

/// A finite simplicial set given by its nondegenerate simplices and faces.
#[derive(Clone, Debug, Default)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    index: HashMap<String, (usize, usize)>,
}

impl SimplicialSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a nondegenerate `dim`-simplex with faces `d_0 … d_dim`.
    ///
    /// Panics when the face list has the wrong shape; parsers validate first.
    pub fn add(&mut self, dim: usize, name: &str, faces: Vec<Simplex>) -> usize {
        assert_eq!(faces.len(), if dim == 0 { 0 } else { dim + 1 });
        for f in &faces {
            assert_eq!(f.dim() + 1, dim);
            let (d, i) = f.base();
            assert!(i < self.count(d), "face refers to an unknown simplex");
        }
        if self.names.len() <= dim {
            self.names.resize(dim + 1, Vec::new());
            self.faces.resize(dim + 1, Vec::new());
        }
        let id = self.names[dim].len();
        self.names[dim].push(name.to_string());
        self.faces[dim].push(faces);
        self.index.insert(name.to_string(), (dim, id));
        id
    }

    /// Largest dimension with a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        self.names.iter().rposition(|v| !v.is_empty()).unwrap_or(0)
    }

    pub fn count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn name(&self, n: usize, i: usize) -> &str {
        &self.names[n][i]
    }

    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        self.index.get(name).copied()
    }

    pub fn simplex(&self, n: usize, i: usize) -> Simplex {
        assert!(i < self.count(n));
        Simplex::nondegenerate(n, i)
    }

    /// Human-readable name; degenerate simplices print as `s_j(…)` chains.
    pub fn format(&self, s: &Simplex) -> String {
        let mut out = self.names[s.base_dim][s.id].clone();
        // Peel degeneracies from the top: s_j repeats vertex j.
        let mut eta = s.eta.clone();
        while let Some(j) = eta.windows(2).position(|w| w[0] == w[1]) {
            eta.remove(j + 1);
            out = format!("s{j}({out})");
        }
        out
    }

    /// The simplicial operator `θ`: `σ·θ` for a monotone `θ: [k] → [dim σ]`.
    pub fn apply(&self, s: &Simplex, theta: &[usize]) -> Simplex {
        debug_assert!(theta.windows(2).all(|w| w[0] <= w[1]));
        let comp: Vec<usize> = theta.iter().map(|&t| s.eta[t]).collect();
        let mut image = comp.clone();
        image.dedup();
        let y = self.restrict(s.base_dim, s.id, &image);
        let eta = comp
            .iter()
            .map(|c| y.eta[image.binary_search(c).expect("in image")])
            .collect();
        Simplex {
            base_dim: y.base_dim,
            id: y.id,
            eta,
        }
    }

    /// Restriction of a nondegenerate simplex to an increasing vertex subset.
    fn restrict(&self, n: usize, id: usize, image: &[usize]) -> Simplex {
        if image.len() == n + 1 {
            return Simplex::nondegenerate(n, id);
        }
        let j = (0..=n).find(|j| image.binary_search(j).is_err()).expect("missing vertex");
        let sub: Vec<usize> = image.iter().map(|&i| if i > j { i - 1 } else { i }).collect();
        self.apply(&self.faces[n][id][j], &sub)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        let theta: Vec<usize> = (0..=s.dim()).filter(|&v| v != i).collect();
        self.apply(s, &theta)
    }

    /// The face spanned by vertices `start ..= start + len`.
    pub fn block(&self, s: &Simplex, start: usize, len: usize) -> Simplex {
        let theta: Vec<usize> = (start..=start + len).collect();
        self.apply(s, &theta)
    }

    /// Front `k`-face: the first `k + 1` vertices.
    pub fn front(&self, s: &Simplex, k: usize) -> Simplex {
        self.block(s, 0, k)
    }

    /// Back `k`-face: the last `k + 1` vertices.
    pub fn back(&self, s: &Simplex, k: usize) -> Simplex {
        self.block(s, s.dim() - k, k)
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for n in 2..self.names.len() {
            for id in 0..self.count(n) {
                let x = Simplex::nondegenerate(n, id);
                for j in 1..=n {
                    let dj = self.face(&x, j);
                    for i in 0..j {
                        let lhs = self.face(&dj, i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::axiom(
                                "simplicial identity d_i d_j = d_{j-1} d_i",
                                format!(
                                    "{} with i = {i}, j = {j}: {} vs {}",
                                    self.names[n][id],
                                    self.format(&lhs),
                                    self.format(&rhs)
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternating count of nondegenerate simplices.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.names.len())
            .map(|n| if n % 2 == 0 { self.count(n) as i64 } else { -(self.count(n) as i64) })
            .sum()
    }

    /// Simplices of `Δ^n` (or of its boundary), named by their vertex digits.
    fn simplex_faces(n: usize, include_top: bool) -> Self {
        assert!(n <= 9, "vertex names are single digits");
        let mut set = SimplicialSet::new();
        for k in 0..=n {
            if k == n && !include_top {
                break;
            }
            for mask in 0u32..1 << (n + 1) {
                if mask.count_ones() as usize != k + 1 {
                    continue;
                }
                let verts: Vec<usize> = (0..=n).filter(|v| mask >> v & 1 == 1).collect();
                let name: String = verts.iter().map(|v| char::from(b'0' + *v as u8)).collect();
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k)
                        .map(|i| {
                            let mut f = name.clone();
                            f.remove(i);
                            let (d, id) = set.lookup(&f).expect("faces added first");
                            Simplex::nondegenerate(d, id)
                        })
                        .collect()
                };
                set.add(k, &name, faces);
            }
        }
        set
    }

    /// The standard simplex `Δ^n`.
    pub fn standard_simplex(n: usize) -> Self {
        Self::simplex_faces(n, true)
    }

    /// The boundary `∂Δ^n`, a model of `S^{n−1}`.
    pub fn boundary_of_simplex(n: usize) -> Self {
        Self::simplex_faces(n, false)
    }

    /// `S^n` with one vertex `v` and one nondegenerate `n`-simplex `e`.
    pub fn minimal_sphere(n: usize) -> Self {
        assert!(n >= 1);
        let mut set = SimplicialSet::new();
        set.add(0, "v", Vec::new());
        let mut point = Simplex::nondegenerate(0, 0);
        for j in 0..n - 1 {
            point = point.degeneracy(j);
        }
        let faces = if n == 1 {
            vec![Simplex::nondegenerate(0, 0); 2]
        } else {
            vec![point; n + 1]
        };
        set.add(n, "e", faces);
        set
    }
}

/// Normalized chains `C_*(B)`: nondegenerate simplices, `∂ = Σ d_i` with
/// degenerate faces dropped.
pub fn normalized_chains(b: &SimplicialSet) -> Result<ChainComplex> {
    let top = b.dim();
    let names = (0..=top).map(|n| (0..b.count(n)).map(|i| b.name(n, i).to_string()).collect()).collect();
    let bd = (0..=top)
        .map(|n| {
            let mut m = Matrix::zeros(if n == 0 { 0 } else { b.count(n - 1) }, b.count(n));
            if n > 0 {
                for j in 0..b.count(n) {
                    let s = b.simplex(n, j);
                    for i in 0..=n {
                        if let Some(k) = b.face(&s, i).nondegenerate_id() {
                            m.flip(k, j);
                        }
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex::new(names, bd)
}

/// A normalized cochain of degree `p` with values in a graded space of
/// dimension `out_dim`, one value per nondegenerate `p`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCochain {
    p: usize,
    out_dim: usize,
    values: Vec<BitVec>,
}

impl GradedCochain {
    pub fn zero(b: &SimplicialSet, p: usize, out_dim: usize) -> Self {
        GradedCochain {
            p,
            out_dim,
            values: vec![BitVec::zeros(out_dim); b.count(p)],
        }
    }

    pub fn from_fn(b: &SimplicialSet, p: usize, out_dim: usize, mut f: impl FnMut(usize) -> BitVec) -> Self {
        let values = (0..b.count(p))
            .map(|i| {
                let v = f(i);
                assert_eq!(v.len(), out_dim);
                v
            })
            .collect();
        GradedCochain { p, out_dim, values }
    }

    /// The 0-cochain with value `v` on every vertex.
    pub fn constant(b: &SimplicialSet, v: &BitVec) -> Self {
        Self::from_fn(b, 0, v.len(), |_| v.clone())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn get(&self, i: usize) -> &BitVec {
        &self.values[i]
    }

    pub fn set(&mut self, i: usize, v: BitVec) {
        assert_eq!(v.len(), self.out_dim);
        self.values[i] = v;
    }

    pub fn values(&self) -> &[BitVec] {
        &self.values
    }

    /// Value on an arbitrary simplex; zero on degenerate ones.
    pub fn eval(&self, s: &Simplex) -> BitVec {
        debug_assert_eq!(s.dim(), self.p);
        match s.nondegenerate_id() {
            Some(i) => self.values[i].clone(),
            None => BitVec::zeros(self.out_dim),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(BitVec::is_zero)
    }

    pub fn add_assign(&mut self, other: &GradedCochain) {
        assert_eq!((self.p, self.out_dim), (other.p, other.out_dim));
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_assign(b);
        }
    }

    pub fn add(&self, other: &GradedCochain) -> GradedCochain {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// The part with coefficients of internal degree `q`.
    pub fn component(&self, basis: &GradedBasis, q: usize) -> GradedCochain {
        let r = basis.range(q);
        let values = self
            .values
            .iter()
            .map(|v| BitVec::from_indices(self.out_dim, v.ones().filter(|k| r.contains(k))))
            .collect();
        GradedCochain {
            p: self.p,
            out_dim: self.out_dim,
            values,
        }
    }

    /// True when every value has internal degree `q` (bidegree `(p, q)`).
    pub fn is_bihomogeneous(&self, basis: &GradedBasis, q: usize) -> bool {
        self.values.iter().all(|v| basis.is_homogeneous_of(v, q as i64))
    }

    /// Random cochain of bidegree `(p, q)`.
    pub fn random(rng: &mut impl Rng, b: &SimplicialSet, p: usize, basis: &GradedBasis, q: usize) -> Self {
        let r = basis.range(q);
        Self::from_fn(b, p, basis.dim(), |_| {
            BitVec::from_indices(basis.dim(), r.clone().filter(|_| rng.gen_bool(0.5)))
        })
    }
}

/// `(δc)(σ) = Σ_i c(d_i σ)`.
pub fn cochain_delta(b: &SimplicialSet, c: &GradedCochain) -> GradedCochain {
    let p = c.p + 1;
    GradedCochain::from_fn(b, p, c.out_dim, |i| {
        let s = b.simplex(p, i);
        let mut acc = BitVec::zeros(c.out_dim);
        for j in 0..=p {
            acc.add_assign(&c.eval(&b.face(&s, j)));
        }
        acc
    })
}

/// Splits `σ` into consecutive faces of the given dimensions.
fn blocks(b: &SimplicialSet, s: &Simplex, dims: &[usize]) -> Vec<Simplex> {
    let mut start = 0;
    dims.iter()
        .map(|&d| {
            let f = b.block(s, start, d);
            start += d;
            f
        })
        .collect()
}

/// `μf`: evaluates `f` on the values of `args` over the block decomposition
/// of each simplex.
pub fn mu_apply(b: &SimplicialSet, f: &Cochain, args: &[&GradedCochain]) -> GradedCochain {
    assert_eq!(f.arity(), args.len(), "arity mismatch");
    for (slot, a) in f.slots().iter().zip(args) {
        assert_eq!(*slot, a.out_dim, "coefficient dimension mismatch");
    }
    let dims: Vec<usize> = args.iter().map(|a| a.p).collect();
    let p: usize = dims.iter().sum();
    GradedCochain::from_fn(b, p, f.out_dim(), |i| {
        let s = b.simplex(p, i);
        let mut vals = Vec::with_capacity(args.len());
        for (a, face) in args.iter().zip(blocks(b, &s, &dims)) {
            let v = a.eval(&face);
            if v.is_zero() {
                return BitVec::zeros(f.out_dim());
            }
            vals.push(v);
        }
        f.eval(&vals.iter().collect::<Vec<_>>())
    })
}

/// `μ̄f̄`: as [`mu_apply`], with the last argument valued in the fibre homology.
pub fn mubar_apply(b: &SimplicialSet, fb: &Cochain, args: &[&GradedCochain], c: &GradedCochain) -> GradedCochain {
    let mut all = args.to_vec();
    all.push(c);
    mu_apply(b, fb, &all)
}

/// `(c1 ⌣ c2)(σ) = c1(front) · c2(back)`, multiplied in `ring`.
pub fn cup_b(b: &SimplicialSet, ring: &GradedRing, c1: &GradedCochain, c2: &GradedCochain) -> GradedCochain {
    mu_apply(b, ring.product(), &[c1, c2])
}

/// A normalized cochain of degree `p` with values in linear endomorphisms
/// of a space of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndCochain {
    p: usize,
    dim: usize,
    values: Vec<Matrix>,
}

impl EndCochain {
    pub fn zero(b: &SimplicialSet, p: usize, dim: usize) -> Self {
        EndCochain {
            p,
            dim,
            values: vec![Matrix::zeros(dim, dim); b.count(p)],
        }
    }

    /// Builds the cochain from its columns: `columns[a]` is the cochain
    /// `σ ↦ h(σ)(e_a)`.
    pub fn from_columns(b: &SimplicialSet, p: usize, columns: &[GradedCochain]) -> Self {
        let dim = columns.len();
        let values = (0..b.count(p))
            .map(|i| {
                let cols: Vec<BitVec> = columns
                    .iter()
                    .map(|c| {
                        assert_eq!((c.p, c.out_dim), (p, dim));
                        c.values[i].clone()
                    })
                    .collect();
                Matrix::from_columns(dim, &cols)
            })
            .collect();
        EndCochain { p, dim, values }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> &Matrix {
        &self.values[i]
    }

    pub fn eval(&self, s: &Simplex) -> Matrix {
        match s.nondegenerate_id() {
            Some(i) => self.values[i].clone(),
            None => Matrix::zeros(self.dim, self.dim),
        }
    }

    /// The cochain `σ ↦ h(σ)(e_a)`.
    pub fn column(&self, a: usize) -> GradedCochain {
        GradedCochain {
            p: self.p,
            out_dim: self.dim,
            values: self.values.iter().map(|m| m.column(a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }

    pub fn add_assign(&mut self, other: &EndCochain) {
        assert_eq!((self.p, self.dim), (other.p, other.dim));
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a = a.add(b);
        }
    }
}

pub fn end_delta(b: &SimplicialSet, c: &EndCochain) -> EndCochain {
    let p = c.p + 1;
    let values = (0..b.count(p))
        .map(|i| {
            let s = b.simplex(p, i);
            (0..=p).fold(Matrix::zeros(c.dim, c.dim), |acc, j| acc.add(&c.eval(&b.face(&s, j))))
        })
        .collect();
    EndCochain { p, dim: c.dim, values }
}

/// `(c1 ⌣ c2)(σ) = c1(front) ∘ c2(back)`.
pub fn end_cup(b: &SimplicialSet, c1: &EndCochain, c2: &EndCochain) -> EndCochain {
    assert_eq!(c1.dim, c2.dim);
    let p = c1.p + c2.p;
    let values = (0..b.count(p))
        .map(|i| {
            let s = b.simplex(p, i);
            c1.eval(&b.front(&s, c1.p)).mul(&c2.eval(&b.back(&s, c2.p)))
        })
        .collect();
    EndCochain { p, dim: c1.dim, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exterior() -> GradedRing {
        GradedRing::monomial(&[("1", 0), ("x", 1), ("y", 1), ("xy", 2)], |a, b| match (a, b) {
            (0, k) | (k, 0) => Some(k),
            (1, 2) | (2, 1) => Some(3),
            _ => None,
        })
        .unwrap()
    }

    fn random_any(rng: &mut ChaCha8Rng, b: &SimplicialSet, p: usize, n: usize) -> GradedCochain {
        GradedCochain::from_fn(b, p, n, |_| BitVec::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))))
    }

    #[test]
    fn builders_satisfy_identities() {
        for set in [
            SimplicialSet::standard_simplex(4),
            SimplicialSet::boundary_of_simplex(3),
            SimplicialSet::minimal_sphere(2),
            SimplicialSet::minimal_sphere(4),
        ] {
            set.check_identities().unwrap();
        }
        assert_eq!(SimplicialSet::boundary_of_simplex(3).euler_characteristic(), 2);
        assert_eq!(SimplicialSet::boundary_of_simplex(5).euler_characteristic(), 2);
        assert_eq!(SimplicialSet::minimal_sphere(3).euler_characteristic(), 0);
        assert_eq!(SimplicialSet::standard_simplex(3).euler_characteristic(), 1);
    }

    #[test]
    fn bad_faces_are_rejected() {
        let mut set = SimplicialSet::new();
        let v = set.add(0, "v", vec![]);
        let w = set.add(0, "w", vec![]);
        let e = set.add(1, "e", vec![Simplex::nondegenerate(0, w), Simplex::nondegenerate(0, v)]);
        let f = set.add(1, "f", vec![Simplex::nondegenerate(0, v), Simplex::nondegenerate(0, w)]);
        // d_1 d_2 t = d_1 f = v but d_1 d_1 t = d_1 e = v, while d_0 d_2 t = w differs from d_1 d_0 t = v.
        set.add(
            2,
            "t",
            vec![
                Simplex::nondegenerate(1, e),
                Simplex::nondegenerate(1, e),
                Simplex::nondegenerate(1, f),
            ],
        );
        assert!(matches!(set.check_identities(), Err(Error::Axiom { .. })));
    }

    #[test]
    fn degenerate_faces_compute() {
        let s2 = SimplicialSet::minimal_sphere(2);
        let e = s2.simplex(2, 0);
        for i in 0..3 {
            let f = s2.face(&e, i);
            assert!(f.is_degenerate());
            assert_eq!(s2.format(&f), "s0(v)");
            assert_eq!(s2.face(&f, 0), s2.simplex(0, 0));
        }
        let d3 = SimplicialSet::standard_simplex(3);
        let t = d3.simplex(3, 0);
        let s = t.degeneracy(1);
        assert_eq!(d3.face(&s, 1), t);
        assert_eq!(d3.face(&s, 2), t);
        assert_eq!(d3.format(&d3.face(&s, 0)), "s0(123)");
        assert_eq!(d3.name(2, d3.back(&t, 2).nondegenerate_id().unwrap()), "123");
        assert_eq!(d3.name(1, d3.front(&t, 1).nondegenerate_id().unwrap()), "01");
    }

    #[test]
    fn delta_examples() {
        let d2 = SimplicialSet::standard_simplex(2);
        let one = BitVec::unit(1, 0);
        assert!(cochain_delta(&d2, &GradedCochain::constant(&d2, &one)).is_zero());
        let (_, e01) = d2.lookup("01").unwrap();
        let mut c = GradedCochain::zero(&d2, 1, 1);
        c.set(e01, one.clone());
        let dc = cochain_delta(&d2, &c);
        assert_eq!(dc.values(), std::slice::from_ref(&one));
        let (_, v0) = d2.lookup("0").unwrap();
        let mut c0 = GradedCochain::zero(&d2, 0, 1);
        c0.set(v0, one);
        let dc0 = cochain_delta(&d2, &c0);
        let hit: Vec<&str> = (0..3).filter(|&i| !dc0.get(i).is_zero()).map(|i| d2.name(1, i)).collect();
        assert_eq!(hit, ["01", "02"]);
    }

    #[test]
    fn delta_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for b in [SimplicialSet::standard_simplex(4), SimplicialSet::minimal_sphere(3)] {
            for p in 0..b.dim().saturating_sub(1) {
                for _ in 0..10 {
                    let c = random_any(&mut rng, &b, p, 3);
                    assert!(cochain_delta(&b, &cochain_delta(&b, &c)).is_zero());
                }
            }
        }
    }

    #[test]
    fn cup_is_unital_associative_and_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ring = exterior();
        let b = SimplicialSet::standard_simplex(4);
        let n = ring.dim();
        let unit = GradedCochain::constant(&b, ring.unit());
        for _ in 0..20 {
            let p = rng.gen_range(0..=2);
            let q = rng.gen_range(0..=4 - p - 1);
            let c1 = random_any(&mut rng, &b, p, n);
            let c2 = random_any(&mut rng, &b, q, n);
            assert_eq!(cup_b(&b, &ring, &unit, &c1), c1);
            assert_eq!(cup_b(&b, &ring, &c1, &unit), c1);
            assert!(cup_b(&b, &ring, &c1, &GradedCochain::zero(&b, q, n)).is_zero());
            let lhs = cochain_delta(&b, &cup_b(&b, &ring, &c1, &c2));
            let rhs = cup_b(&b, &ring, &cochain_delta(&b, &c1), &c2).add(&cup_b(&b, &ring, &c1, &cochain_delta(&b, &c2)));
            assert_eq!(lhs, rhs);
            if p + q < 4 {
                let c3 = random_any(&mut rng, &b, 4 - p - q, n);
                assert_eq!(
                    cup_b(&b, &ring, &cup_b(&b, &ring, &c1, &c2), &c3),
                    cup_b(&b, &ring, &c1, &cup_b(&b, &ring, &c2, &c3))
                );
            }
        }
    }

    /// Trilinear `μf` on `∂Δ³` against evaluation through vertex names.
    #[test]
    fn mu_trilinear_matches_name_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = SimplicialSet::boundary_of_simplex(3);
        let n = 3;
        let f = Cochain::from_fn(vec![n; 3], n, 0, |_| {
            BitVec::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
        });
        for dims in [[1, 1, 0], [0, 1, 1], [1, 0, 1], [2, 0, 0], [0, 0, 2], [0, 2, 0]] {
            let args: Vec<GradedCochain> = dims.iter().map(|&p| random_any(&mut rng, &b, p, n)).collect();
            let refs: Vec<&GradedCochain> = args.iter().collect();
            let got = mu_apply(&b, &f, &refs);
            for i in 0..b.count(2) {
                let name = b.name(2, i);
                let mut start = 0;
                let vals: Vec<BitVec> = dims
                    .iter()
                    .zip(&args)
                    .map(|(&d, a)| {
                        let sub = &name[start..=start + d];
                        start += d;
                        let (_, j) = b.lookup(sub).unwrap();
                        a.get(j).clone()
                    })
                    .collect();
                let want = f.eval(&vals.iter().collect::<Vec<_>>());
                assert_eq!(got.get(i), &want, "{name} {dims:?}");
            }
        }
        assert!(mu_apply(&b, &Cochain::zero(vec![n; 3], n, 0), &[
            &random_any(&mut rng, &b, 1, n),
            &random_any(&mut rng, &b, 1, n),
            &random_any(&mut rng, &b, 0, n)
        ])
        .is_zero());
    }

    #[test]
    fn degenerate_blocks_vanish() {
        let b = SimplicialSet::minimal_sphere(2);
        let ring = exterior();
        let c1 = GradedCochain::from_fn(&b, 1, ring.dim(), |_| unreachable!());
        assert!(c1.values().is_empty());
        let c2 = GradedCochain::constant(&b, ring.unit());
        let e = GradedCochain::from_fn(&b, 2, ring.dim(), |_| BitVec::unit(4, 1));
        // A 1-cochain on S² is empty, so any cup through it vanishes.
        assert!(cup_b(&b, &ring, &c1, &c1).is_zero());
        assert_eq!(cup_b(&b, &ring, &c2, &e), e);
    }

    #[test]
    fn end_cup_composes_front_then_back() {
        let b = SimplicialSet::standard_simplex(2);
        let x = Matrix::from_bit_rows(&[&[0, 0], &[1, 0]]);
        let y = Matrix::from_bit_rows(&[&[0, 1], &[0, 0]]);
        let mut h1 = EndCochain::zero(&b, 1, 2);
        let (_, e01) = b.lookup("01").unwrap();
        let (_, e12) = b.lookup("12").unwrap();
        h1.values[e01] = x.clone();
        h1.values[e12] = y.clone();
        let sq = end_cup(&b, &h1, &h1);
        assert_eq!(sq.get(0), &x.mul(&y));
        assert_ne!(x.mul(&y), y.mul(&x));
        assert!(end_delta(&b, &end_delta(&b, &EndCochain::zero(&b, 0, 2))).is_zero());
        assert_eq!(EndCochain::from_columns(&b, 1, &[h1.column(0), h1.column(1)]), h1);
    }
}
