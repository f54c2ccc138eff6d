//! Hochschild cochains of the homology ring `H_*(G)`, the `⌣` and `⌣₁`
//! products, and the residuals measuring the twisting-cochain equation
//! `δf = f ⌣₁ f` and its module counterpart.
//!
//! Cochains are stored extensionally: one value per tuple of basis elements.
//! Every product here is a special case of [`compose_at`], which plugs one
//! multilinear map into a slot of another.

use std::collections::BTreeMap;

use rand::Rng;

use crate::complexes::{DGAlgebra, DGModule, HomologyData};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graded::GradedBasis;

/// A multilinear map `V_1 ⊗ … ⊗ V_i → W`, homogeneous of `degree`
/// (the output degree is the sum of input degrees plus `degree`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    slots: Vec<usize>,
    out_dim: usize,
    degree: i64,
    table: Vec<BitVec>,
}

impl Cochain {
    pub fn zero(slots: Vec<usize>, out_dim: usize, degree: i64) -> Self {
        let len = slots.iter().product();
        Cochain {
            slots,
            out_dim,
            degree,
            table: vec![BitVec::zeros(out_dim); len],
        }
    }

    /// Builds a cochain from a function on basis tuples.
    pub fn from_fn(slots: Vec<usize>, out_dim: usize, degree: i64, mut f: impl FnMut(&[usize]) -> BitVec) -> Self {
        let mut c = Cochain::zero(slots, out_dim, degree);
        let mut tuple = vec![0; c.slots.len()];
        for idx in 0..c.table.len() {
            c.decode(idx, &mut tuple);
            let v = f(&tuple);
            assert_eq!(v.len(), out_dim);
            c.table[idx] = v;
        }
        c
    }

    /// Identity map of a space of dimension `n`.
    pub fn identity(n: usize) -> Self {
        Cochain::from_fn(vec![n], n, 0, |t| BitVec::unit(n, t[0]))
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(BitVec::is_zero)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.slots.len());
        tuple.iter().zip(&self.slots).fold(0, |acc, (&t, &d)| {
            debug_assert!(t < d);
            acc * d + t
        })
    }

    fn decode(&self, mut idx: usize, tuple: &mut [usize]) {
        for (t, &d) in tuple.iter_mut().zip(&self.slots).rev() {
            *t = idx % d;
            idx /= d;
        }
    }

    pub fn get(&self, tuple: &[usize]) -> &BitVec {
        &self.table[self.index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: BitVec) {
        assert_eq!(value.len(), self.out_dim);
        let i = self.index(tuple);
        self.table[i] = value;
    }

    /// Iterates over `(tuple, value)` pairs in lexicographic tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &BitVec)> + '_ {
        self.table.iter().enumerate().map(|(idx, v)| {
            let mut t = vec![0; self.slots.len()];
            self.decode(idx, &mut t);
            (t, v)
        })
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&BitVec]) -> BitVec {
        assert_eq!(args.len(), self.slots.len(), "wrong number of arguments");
        let supports: Vec<Vec<usize>> = args.iter().map(|a| a.ones().collect()).collect();
        let mut out = BitVec::zeros(self.out_dim);
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pos = vec![0usize; args.len()];
        loop {
            let idx = pos
                .iter()
                .zip(&supports)
                .zip(&self.slots)
                .fold(0, |acc, ((&p, s), &d)| acc * d + s[p]);
            out.add_assign(&self.table[idx]);
            let mut k = args.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                pos[k] += 1;
                if pos[k] < supports[k].len() {
                    break;
                }
                pos[k] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.slots, other.slots, "adding cochains with different slots");
        assert_eq!(self.out_dim, other.out_dim);
        Cochain {
            slots: self.slots.clone(),
            out_dim: self.out_dim,
            degree: self.degree,
            table: self.table.iter().zip(&other.table).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Cochain) {
        assert_eq!(self.slots, other.slots, "adding cochains with different slots");
        for (a, b) in self.table.iter_mut().zip(&other.table) {
            a.add_assign(b);
        }
    }

    /// Checks `|f(e_1,…,e_i)| = Σ|e_k| + degree` on every basis tuple.
    pub fn is_homogeneous(&self, inputs: &[&GradedBasis], output: &GradedBasis) -> bool {
        assert_eq!(inputs.len(), self.slots.len());
        self.entries().all(|(t, v)| {
            let sum: i64 = t.iter().zip(inputs).map(|(&e, b)| b.degree(e) as i64).sum();
            output.is_homogeneous_of(v, sum + self.degree)
        })
    }

    /// A random homogeneous cochain of the given shape.
    pub fn random(rng: &mut impl Rng, inputs: &[&GradedBasis], output: &GradedBasis, degree: i64, density: f64) -> Self {
        let slots = inputs.iter().map(|b| b.dim()).collect();
        Cochain::from_fn(slots, output.dim(), degree, |t| {
            let target: i64 = t.iter().zip(inputs).map(|(&e, b)| b.degree(e) as i64).sum::<i64>() + degree;
            if target < 0 {
                return BitVec::zeros(output.dim());
            }
            let range = output.range(target as usize);
            BitVec::from_indices(output.dim(), range.filter(|_| rng.gen_bool(density)))
        })
    }
}

/// `outer(a_1, …, a_pos, inner(a_{pos+1}, …, a_{pos+j}), …)`.
pub fn compose_at(outer: &Cochain, inner: &Cochain, pos: usize) -> Cochain {
    assert!(pos < outer.arity(), "insertion slot out of range");
    assert_eq!(outer.slots[pos], inner.out_dim, "inner output does not fit the slot");
    let j = inner.arity();
    let mut slots = outer.slots[..pos].to_vec();
    slots.extend_from_slice(&inner.slots);
    slots.extend_from_slice(&outer.slots[pos + 1..]);
    let mut outer_tuple = vec![0; outer.arity()];
    Cochain::from_fn(slots, outer.out_dim, outer.degree + inner.degree, |t| {
        let v = inner.get(&t[pos..pos + j]);
        let mut out = BitVec::zeros(outer.out_dim);
        if v.is_zero() {
            return out;
        }
        outer_tuple[..pos].copy_from_slice(&t[..pos]);
        outer_tuple[pos + 1..].copy_from_slice(&t[pos + j..]);
        for k in v.ones() {
            outer_tuple[pos] = k;
            out.add_assign(outer.get(&outer_tuple));
        }
        out
    })
}

/// The homology ring `H_*(G)` with its (Pontryagin) product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    basis: GradedBasis,
    unit: BitVec,
    product: Cochain,
}

impl GradedRing {
    /// Builds a ring and checks degree additivity, the unit and associativity.
    pub fn new(basis: GradedBasis, unit: BitVec, product: Cochain) -> Result<Self> {
        let n = basis.dim();
        if product.slots() != [n, n] || product.out_dim() != n || product.degree() != 0 {
            return Err(Error::axiom("ring shape", "product must be a degree-0 map H ⊗ H → H"));
        }
        if !product.is_homogeneous(&[&basis, &basis], &basis) {
            return Err(Error::axiom("degree additivity", "|a·b| ≠ |a| + |b|"));
        }
        let ring = GradedRing { basis, unit, product };
        for a in 0..n {
            let e = BitVec::unit(n, a);
            if ring.mul(&ring.unit, &e) != e || ring.mul(&e, &ring.unit) != e {
                return Err(Error::axiom("unit", format!("1·{0} or {0}·1", ring.basis.label(a))));
            }
            for b in 0..n {
                let ab = ring.product.get(&[a, b]).clone();
                for c in 0..n {
                    let ec = BitVec::unit(n, c);
                    let lhs = ring.mul(&ab, &ec);
                    let rhs = ring.mul(&e, ring.product.get(&[b, c]));
                    if lhs != rhs {
                        return Err(Error::axiom(
                            "associativity",
                            format!(
                                "({}·{})·{}",
                                ring.basis.label(a),
                                ring.basis.label(b),
                                ring.basis.label(c)
                            ),
                        ));
                    }
                }
            }
        }
        Ok(ring)
    }

    /// A ring whose basis elements multiply to a basis element or to zero.
    /// `degrees[k]` is the degree of basis element `k`, listed in ascending
    /// degree order; element 0 is the unit.
    pub fn monomial(labels: &[(&str, usize)], product: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        let top = labels.iter().map(|l| l.1).max().unwrap_or(0);
        let mut per_degree = vec![Vec::new(); top + 1];
        let mut order = Vec::new();
        for (n, bucket) in per_degree.iter_mut().enumerate() {
            for (k, (name, d)) in labels.iter().enumerate() {
                if *d == n {
                    bucket.push(name.to_string());
                    order.push(k);
                }
            }
        }
        if order.iter().enumerate().any(|(i, &k)| i != k) {
            return Err(Error::axiom("ring basis", "labels must be listed in ascending degree"));
        }
        let n = labels.len();
        let basis = GradedBasis::from_degrees(per_degree);
        let table = Cochain::from_fn(vec![n, n], n, 0, |t| match product(t[0], t[1]) {
            Some(k) => BitVec::unit(n, k),
            None => BitVec::zeros(n),
        });
        GradedRing::new(basis, BitVec::unit(n, 0), table)
    }

    /// `H_*(G)` with product `cl(g(a)·g(b))`.
    pub fn from_homology(alg: &DGAlgebra, hd: &HomologyData) -> Result<Self> {
        let basis = hd.basis().clone();
        let n = basis.dim();
        let unit = hd.cl(&alg.unit())?;
        let mut failure = None;
        let product = Cochain::from_fn(vec![n, n], n, 0, |t| {
            let z = alg.mul(&hd.g_basis(t[0]), &hd.g_basis(t[1]));
            hd.cl(&z).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                BitVec::zeros(n)
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        GradedRing::new(basis, unit, product)
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn unit(&self) -> &BitVec {
        &self.unit
    }

    /// The product as an arity-2 cochain.
    pub fn product(&self) -> &Cochain {
        &self.product
    }

    pub fn mul(&self, x: &BitVec, y: &BitVec) -> BitVec {
        self.product.eval(&[x, y])
    }

    pub fn is_commutative(&self) -> bool {
        self.product.entries().all(|(t, v)| v == self.product.get(&[t[1], t[0]]))
    }
}

/// `H_*(F)` as a module over `H_*(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    basis: GradedBasis,
    action: Cochain,
}

impl GradedModule {
    pub fn new(ring: &GradedRing, basis: GradedBasis, action: Cochain) -> Result<Self> {
        if action.slots() != [ring.dim(), basis.dim()] || action.out_dim() != basis.dim() {
            return Err(Error::axiom("module shape", "action must be a map H(G) ⊗ H(F) → H(F)"));
        }
        if !action.is_homogeneous(&[ring.basis(), &basis], &basis) {
            return Err(Error::axiom("degree additivity", "|a·x| ≠ |a| + |x|"));
        }
        let m = GradedModule { basis, action };
        for x in 0..m.dim() {
            let ex = BitVec::unit(m.dim(), x);
            if m.act(ring.unit(), &ex) != ex {
                return Err(Error::axiom("unit", format!("1·{}", m.basis.label(x))));
            }
            for a in 0..ring.dim() {
                for b in 0..ring.dim() {
                    let ab = ring.product().get(&[a, b]);
                    let lhs = m.act(ab, &ex);
                    let rhs = m.act(&BitVec::unit(ring.dim(), a), m.action.get(&[b, x]));
                    if lhs != rhs {
                        return Err(Error::axiom("module associativity", format!("(ab)x at x = {}", m.basis.label(x))));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `H_*(F)` with action `cl(g(a)·ḡ(x))`.
    pub fn from_homology(ring: &GradedRing, module: &DGModule, hd_g: &HomologyData, hd_f: &HomologyData) -> Result<Self> {
        let basis = hd_f.basis().clone();
        let n = basis.dim();
        let mut failure = None;
        let action = Cochain::from_fn(vec![ring.dim(), n], n, 0, |t| {
            let z = module.act(&hd_g.g_basis(t[0]), &hd_f.g_basis(t[1]));
            hd_f.cl(&z).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                BitVec::zeros(n)
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        GradedModule::new(ring, basis, action)
    }

    /// The ring acting on itself.
    pub fn regular(ring: &GradedRing) -> Self {
        GradedModule {
            basis: ring.basis.clone(),
            action: ring.product.clone(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn action(&self) -> &Cochain {
        &self.action
    }

    pub fn act(&self, a: &BitVec, x: &BitVec) -> BitVec {
        self.action.eval(&[a, x])
    }
}

/// Hochschild coboundary
/// `δf(a_1,…,a_{i+1}) = a_1·f(a_2,…) + Σ_k f(…, a_k·a_{k+1}, …) + f(a_1,…,a_i)·a_{i+1}`.
pub fn hdelta(ring: &GradedRing, f: &Cochain) -> Cochain {
    let m = ring.product();
    let mut out = compose_at(m, f, 1);
    for k in 0..f.arity() {
        out.add_assign(&compose_at(f, m, k));
    }
    out.add_assign(&compose_at(m, f, 0));
    out
}

/// `(f ⌣ g)(a_1,…,a_{i+j}) = f(a_1,…,a_i)·g(a_{i+1},…,a_{i+j})`.
pub fn cup(ring: &GradedRing, f: &Cochain, g: &Cochain) -> Cochain {
    compose_at(&compose_at(ring.product(), g, 1), f, 0)
}

/// `f ⌣₁ g`: the sum of `g` inserted into each of the `i` slots of `f`.
pub fn cup1(f: &Cochain, g: &Cochain) -> Cochain {
    let mut out: Option<Cochain> = None;
    for k in 0..f.arity() {
        let term = compose_at(f, g, k);
        match &mut out {
            Some(acc) => acc.add_assign(&term),
            None => out = Some(term),
        }
    }
    out.expect("cup1 needs arity at least 1")
}

/// Components `f^i` of a family `f = f^3 + f^4 + …`, truncated at `arity_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainFamily {
    arity_max: usize,
    components: BTreeMap<usize, Cochain>,
}

/// `f^i : H(G)^{⊗i} → H(G)` of degree `i − 2`.
pub type HochschildFamily = CochainFamily;
/// `f̄^i : H(G)^{⊗(i−1)} ⊗ H(F) → H(F)` of degree `i − 2`.
pub type ModuleCochainFamily = CochainFamily;

impl CochainFamily {
    pub fn new(arity_max: usize) -> Self {
        CochainFamily {
            arity_max,
            components: BTreeMap::new(),
        }
    }

    /// The zero Hochschild family over `ring`.
    pub fn zero_hochschild(ring: &GradedRing, arity_max: usize) -> Self {
        let mut fam = Self::new(arity_max);
        for i in 3..=arity_max {
            fam.insert(i, Cochain::zero(vec![ring.dim(); i], ring.dim(), i as i64 - 2));
        }
        fam
    }

    /// The zero module family over `(ring, module)`.
    pub fn zero_module(ring: &GradedRing, module: &GradedModule, arity_max: usize) -> Self {
        let mut fam = Self::new(arity_max);
        for i in 3..=arity_max {
            let mut slots = vec![ring.dim(); i - 1];
            slots.push(module.dim());
            fam.insert(i, Cochain::zero(slots, module.dim(), i as i64 - 2));
        }
        fam
    }

    pub fn arity_max(&self) -> usize {
        self.arity_max
    }

    pub fn insert(&mut self, arity: usize, c: Cochain) {
        assert!((3..=self.arity_max).contains(&arity), "component arity {arity} out of range");
        assert_eq!(c.arity(), arity);
        self.components.insert(arity, c);
    }

    pub fn get(&self, arity: usize) -> Option<&Cochain> {
        self.components.get(&arity)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Cochain)> {
        self.components.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Cochain::is_zero)
    }
}

/// Arities `m` at which the residuals are fully determined by a family
/// truncated at `arity_max`.
pub fn certifiable_arities(arity_max: usize) -> std::ops::RangeInclusive<usize> {
    4..=arity_max + 1
}

/// Per-arity residual of `δf = f ⌣₁ f`: at arity `m`,
/// `δf^{m−1} + Σ_{s+t=m+1} f^s ⌣₁ f^t` (with `s, t ≥ 3`).
pub fn twisting_residual(ring: &GradedRing, f: &HochschildFamily) -> Vec<(usize, Cochain)> {
    certifiable_arities(f.arity_max())
        .map(|m| {
            let mut r = hdelta(ring, f.get(m - 1).expect("family component missing"));
            for s in 3..=m - 2 {
                let t = m + 1 - s;
                if t < 3 {
                    continue;
                }
                r.add_assign(&cup1(f.get(s).unwrap(), f.get(t).unwrap()));
            }
            (m, r)
        })
        .collect()
}

/// Module coboundary of `f̄^{i−1}` (arity `i`):
/// `a_1·f̄(a_2,…,x) + Σ_k f̄(…, a_k·a_{k+1}, …, x) + f̄(a_1,…,a_{i−2}, a_{i−1}·x)`.
pub fn module_delta(ring: &GradedRing, module: &GradedModule, fb: &Cochain) -> Cochain {
    let last = fb.arity() - 1;
    let mut out = compose_at(module.action(), fb, 1);
    for k in 0..last {
        out.add_assign(&compose_at(fb, ring.product(), k));
    }
    out.add_assign(&compose_at(fb, module.action(), last));
    out
}

/// Per-arity residual of the compatibility condition between `f` and `f̄`.
///
/// At arity `m` this is the module coboundary of `f̄^{m−1}`, plus the action
/// of `f^{m−1}(a_1,…,a_{m−1})` on `x`, plus `f^t` inserted into the
/// `a`-slots of `f̄^s` and `f̄^t` inserted into the last slot of `f̄^s`
/// (`s + t = m + 1`, `s, t ≥ 3`).
pub fn module_residual(
    ring: &GradedRing,
    module: &GradedModule,
    f: &HochschildFamily,
    fb: &ModuleCochainFamily,
) -> Vec<(usize, Cochain)> {
    certifiable_arities(fb.arity_max().min(f.arity_max()))
        .map(|m| {
            let mut r = module_delta(ring, module, fb.get(m - 1).expect("family component missing"));
            r.add_assign(&compose_at(module.action(), f.get(m - 1).unwrap(), 0));
            for s in 3..=m - 2 {
                let t = m + 1 - s;
                if t < 3 {
                    continue;
                }
                let outer = fb.get(s).unwrap();
                for k in 0..s - 1 {
                    r.add_assign(&compose_at(outer, f.get(t).unwrap(), k));
                }
                r.add_assign(&compose_at(outer, fb.get(t).unwrap(), s - 1));
            }
            (m, r)
        })
        .collect()
}
