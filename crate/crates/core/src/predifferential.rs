//! The equation for `h₀` on the base, its degree-by-degree solution, and the
//! twisting cochains `h` (on `H_*(G)`) and `h̄` (on `H_*(F)`) built from it.
//!
//! Degrees: `h₀^i ∈ C^i(B, H_{i−1}(G))`. The equation at cochain degree
//! `P` reads
//! `δh₀^{P−1} = Σ_{k ≥ 2} Σ_{s_1+…+s_k = P} μf^k(h₀^{s_1}, …, h₀^{s_k})`
//! with `f^2` the Pontryagin product, so the `k = 2` terms are `h₀ ⌣ h₀`.

use std::collections::BTreeMap;

use crate::base_cochains::{
    cochain_delta, end_cup, end_delta, mu_apply, EndCochain, GradedCochain, SimplicialSet,
};
use crate::error::{Error, Result};
use crate::gf2::{solve_with, BitVec, Matrix, TieBreak};
use crate::hochschild::{Cochain, GradedModule, GradedRing, HochschildFamily, ModuleCochainFamily};

/// `h₀ = h₀^2 + h₀^3 + …`, indexed by cochain degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Cochain {
    components: BTreeMap<usize, GradedCochain>,
    deg_max: usize,
}

impl H0Cochain {
    pub fn zero(b: &SimplicialSet, ring: &GradedRing, deg_max: usize) -> Self {
        let components = (2..=deg_max).map(|i| (i, GradedCochain::zero(b, i, ring.dim()))).collect();
        H0Cochain { components, deg_max }
    }

    /// Builds `h₀` from explicit components, zero elsewhere; checks bidegrees.
    pub fn from_components(
        b: &SimplicialSet,
        ring: &GradedRing,
        deg_max: usize,
        given: BTreeMap<usize, GradedCochain>,
    ) -> Result<Self> {
        let mut h = Self::zero(b, ring, deg_max);
        for (i, c) in given {
            h.set(ring, i, c)?;
        }
        Ok(h)
    }

    pub fn deg_max(&self) -> usize {
        self.deg_max
    }

    pub fn get(&self, i: usize) -> &GradedCochain {
        &self.components[&i]
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &GradedCochain)> {
        self.components.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(GradedCochain::is_zero)
    }

    fn set(&mut self, ring: &GradedRing, i: usize, c: GradedCochain) -> Result<()> {
        if !(2..=self.deg_max).contains(&i) {
            return Err(Error::certification("h0", format!("component {i} outside 2..={}", self.deg_max)));
        }
        if c.p() != i || c.out_dim() != ring.dim() || !c.is_bihomogeneous(ring.basis(), i - 1) {
            return Err(Error::certification(
                "h0",
                format!("component {i} must have bidegree ({i}, {})", i - 1),
            ));
        }
        self.components.insert(i, c);
        Ok(())
    }
}

/// Ordered tuples of integers `≥ 2` with `k` entries summing to `total`.
fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 2..=total.saturating_sub(2 * (k - 1)) {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The component `f^k`, with the ring product standing in for `f^2`.
fn family_component<'a>(ring: &'a GradedRing, f: &'a HochschildFamily, k: usize) -> &'a Cochain {
    if k == 2 {
        ring.product()
    } else {
        f.get(k)
            .unwrap_or_else(|| panic!("the family stops at arity {}; arity {k} is needed", f.arity_max()))
    }
}

/// Right-hand side of the equation at cochain degree `p`, built from the
/// components of `h0` in degrees `< p − 1`.
fn products_at(b: &SimplicialSet, ring: &GradedRing, f: &HochschildFamily, h0: &H0Cochain, p: usize) -> GradedCochain {
    let mut out = GradedCochain::zero(b, p, ring.dim());
    for k in 2..=p / 2 {
        let fk = family_component(ring, f, k);
        if fk.is_zero() {
            continue;
        }
        for parts in compositions(p, k) {
            let args: Vec<&GradedCochain> = parts.iter().map(|&s| h0.get(s)).collect();
            if args.iter().any(|a| a.is_zero()) {
                continue;
            }
            out.add_assign(&mu_apply(b, fk, &args));
        }
    }
    out
}

/// Smallest family arity needed by [`l_residual`] up to `deg_max`.
pub fn required_arity(deg_max: usize) -> usize {
    deg_max.div_ceil(2).max(2)
}

/// `δh₀ + h₀⌣h₀ + Σ_k μf^k(h₀, …, h₀)` for each cochain degree `3..=deg_max+1`.
pub fn l_residual(
    b: &SimplicialSet,
    ring: &GradedRing,
    f: &HochschildFamily,
    h0: &H0Cochain,
) -> Vec<(usize, GradedCochain)> {
    (3..=h0.deg_max + 1)
        .map(|p| {
            let mut r = cochain_delta(b, h0.get(p - 1));
            r.add_assign(&products_at(b, ring, f, h0, p));
            (p, r)
        })
        .collect()
}

/// Result of [`solve_h0`].
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(H0Cochain),
    /// `δh₀^degree` must equal `obstruction`, which is not a coboundary
    /// (or, for a seeded degree, differs from the seed's coboundary).
    Obstructed { degree: usize, obstruction: GradedCochain },
}

/// Scalar coboundary `C^r(B) → C^{r+1}(B)`.
fn scalar_delta(b: &SimplicialSet, r: usize) -> Matrix {
    let mut m = Matrix::zeros(b.count(r + 1), b.count(r));
    for i in 0..b.count(r + 1) {
        let s = b.simplex(r + 1, i);
        for j in 0..=r + 1 {
            if let Some(k) = b.face(&s, j).nondegenerate_id() {
                m.flip(i, k);
            }
        }
    }
    m
}

/// Extends the given components of `h₀` degree by degree.
///
/// Seeded degrees are taken as given and verified; every other degree
/// `r ≥ 3` is the canonical solution of `δh₀^r = (products at r + 1)`.
pub fn solve_h0(
    b: &SimplicialSet,
    ring: &GradedRing,
    f: &HochschildFamily,
    seeds: &BTreeMap<usize, GradedCochain>,
    deg_max: usize,
    tie: TieBreak,
) -> Result<SolveOutcome> {
    let mut h0 = H0Cochain::zero(b, ring, deg_max);
    for r in 2..=deg_max {
        let rhs = products_at(b, ring, f, &h0, r + 1);
        if let Some(seed) = seeds.get(&r) {
            h0.set(ring, r, seed.clone())?;
            let mut diff = cochain_delta(b, seed);
            diff.add_assign(&rhs);
            if !diff.is_zero() {
                return Ok(SolveOutcome::Obstructed { degree: r, obstruction: rhs });
            }
            continue;
        }
        if rhs.is_zero() {
            continue;
        }
        let delta = scalar_delta(b, r);
        let n = ring.dim();
        let mut columns = vec![BitVec::zeros(b.count(r)); n];
        for (a, col) in columns.iter_mut().enumerate() {
            let target = BitVec::from_indices(b.count(r + 1), (0..b.count(r + 1)).filter(|&i| rhs.get(i).get(a)));
            if target.is_zero() {
                continue;
            }
            match solve_with(&delta, &target, tie)? {
                Some(x) => *col = x,
                None => return Ok(SolveOutcome::Obstructed { degree: r, obstruction: rhs }),
            }
        }
        let c = GradedCochain::from_fn(b, r, n, |i| BitVec::from_indices(n, (0..n).filter(|&a| columns[a].get(i))));
        h0.set(ring, r, c)?;
    }
    if let Some((p, _)) = l_residual(b, ring, f, &h0).into_iter().find(|(_, r)| !r.is_zero()) {
        return Err(Error::certification("h0", format!("residual nonzero in cochain degree {p} after solving")));
    }
    Ok(SolveOutcome::Solved(h0))
}

/// `h = h^2 + h^3 + …` with `h^k ∈ C^k(B, End(V))` raising degree by `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingCochainB {
    components: BTreeMap<usize, EndCochain>,
    deg_max: usize,
}

impl TwistingCochainB {
    pub fn get(&self, k: usize) -> Option<&EndCochain> {
        self.components.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &EndCochain)> {
        self.components.iter().map(|(&k, c)| (k, c))
    }

    pub fn deg_max(&self) -> usize {
        self.deg_max
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(EndCochain::is_zero)
    }

    /// `δh + h⌣h` in each cochain degree `3..=deg_max+1`.
    pub fn residual(&self, b: &SimplicialSet) -> Vec<(usize, EndCochain)> {
        let dim = self.components.values().next().map_or(0, EndCochain::dim);
        (3..=self.deg_max + 1)
            .map(|p| {
                let mut r = match self.get(p - 1) {
                    Some(c) => end_delta(b, c),
                    None => EndCochain::zero(b, p, dim),
                };
                for k in 2..=p - 2 {
                    if let (Some(x), Some(y)) = (self.get(k), self.get(p - k)) {
                        r.add_assign(&end_cup(b, x, y));
                    }
                }
                (p, r)
            })
            .collect()
    }

    pub fn certify(&self, b: &SimplicialSet, stage: &'static str) -> Result<()> {
        match self.residual(b).into_iter().find(|(_, r)| !r.is_zero()) {
            Some((p, _)) => Err(Error::certification(stage, format!("δh ≠ h⌣h in cochain degree {p}"))),
            None => Ok(()),
        }
    }
}

/// Shared body of [`alpha`] and [`beta`]: `h^k(e)` is the sum over arities
/// `i ≥ 2` of `μc^i(h₀, …, h₀, e)` with `c^2 = two` and `c^i = higher(i)`.
#[allow(clippy::too_many_arguments)]
fn build_twisting<'a>(
    b: &SimplicialSet,
    h0: &H0Cochain,
    target: &crate::graded::GradedBasis,
    two: &'a Cochain,
    higher: impl Fn(usize) -> Option<&'a Cochain>,
    stage: &'static str,
) -> Result<TwistingCochainB> {
    let dim = target.dim();
    let mut components = BTreeMap::new();
    for k in 2..=h0.deg_max {
        let columns: Vec<GradedCochain> = (0..dim)
            .map(|e| {
                let x = GradedCochain::constant(b, &BitVec::unit(dim, e));
                let mut col = GradedCochain::zero(b, k, dim);
                for i in 2..=k / 2 + 1 {
                    let ci = if i == 2 {
                        two
                    } else {
                        higher(i).unwrap_or_else(|| panic!("arity {i} is needed for degree {k}"))
                    };
                    if ci.is_zero() {
                        continue;
                    }
                    for parts in compositions(k, i - 1) {
                        let mut args: Vec<&GradedCochain> = parts.iter().map(|&s| h0.get(s)).collect();
                        if args.iter().any(|a| a.is_zero()) {
                            continue;
                        }
                        args.push(&x);
                        col.add_assign(&mu_apply(b, ci, &args));
                    }
                }
                col
            })
            .collect();
        for (e, col) in columns.iter().enumerate() {
            let q = target.degree(e) + k - 1;
            if !col.is_bihomogeneous(target, q) {
                return Err(Error::certification(stage, format!("h^{k} does not raise degree by {}", k - 1)));
            }
        }
        components.insert(k, EndCochain::from_columns(b, k, &columns));
    }
    let h = TwistingCochainB {
        components,
        deg_max: h0.deg_max,
    };
    h.certify(b, stage)?;
    Ok(h)
}

/// Smallest family arity needed by [`alpha`] and [`beta`] up to `deg_max`.
pub fn required_arity_twisting(deg_max: usize) -> usize {
    deg_max / 2 + 1
}

/// `h(a) = h₀·a + Σ_i μf^i(h₀, …, h₀, a)`, certified by `δh = h⌣h`.
pub fn alpha(b: &SimplicialSet, ring: &GradedRing, f: &HochschildFamily, h0: &H0Cochain) -> Result<TwistingCochainB> {
    build_twisting(b, h0, ring.basis(), ring.product(), |i| f.get(i), "alpha")
}

/// `h̄(x) = h₀·x + Σ_i μ̄f̄^i(h₀, …, h₀, x)`, certified by `δh̄ = h̄⌣h̄`.
pub fn beta(
    b: &SimplicialSet,
    module: &GradedModule,
    h0: &H0Cochain,
    fb: &ModuleCochainFamily,
) -> Result<TwistingCochainB> {
    build_twisting(b, h0, module.basis(), module.action(), |i| fb.get(i), "beta")
}

/// One checked assertion of the connected-group simplification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShihCheck {
    pub r: usize,
    pub assertion: String,
    pub passed: bool,
}

/// Checks for a group with `H_i(G) = 0` when `0 < i < n − 1`. Since `h₀^r`
/// takes values in `H_{r−1}(G)`, `h₀^r = 0` for `r < n`. For
/// `n ≤ r ≤ 2n − 2` no product of two nonzero components reaches degree
/// `r + 1`, so `h₀^r` is a cocycle and `h^r(a) = h₀^r·a`.
pub fn shih_form(
    b: &SimplicialSet,
    ring: &GradedRing,
    h0: &H0Cochain,
    h: &TwistingCochainB,
    n: usize,
) -> Vec<ShihCheck> {
    let mut out = Vec::new();
    for r in 2..n.min(h0.deg_max + 1) {
        out.push(ShihCheck {
            r,
            assertion: format!("h0^{r} = 0"),
            passed: h0.get(r).is_zero(),
        });
    }
    for r in n.max(2)..=(2 * n).saturating_sub(2).min(h0.deg_max) {
        out.push(ShihCheck {
            r,
            assertion: format!("h0^{r} is a cocycle"),
            passed: cochain_delta(b, h0.get(r)).is_zero(),
        });
        let hr = h.get(r).expect("component present");
        let matches = (0..ring.dim()).all(|a| {
            let x = GradedCochain::constant(b, &BitVec::unit(ring.dim(), a));
            hr.column(a) == mu_apply(b, ring.product(), &[h0.get(r), &x])
        });
        out.push(ShihCheck {
            r,
            assertion: format!("h^{r}(a) = h0^{r}·a"),
            passed: matches,
        });
    }
    out
}
