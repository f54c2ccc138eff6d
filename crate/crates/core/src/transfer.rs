//! Inductive transfer of the chain-level product to higher operations on
//! homology: the maps `A_i` with `f^i = cl(A_i)`, and the module analogue
//! `Ā_i` with `f̄^i = cl(Ā_i)`.
//!
//! In the recursion the binary operations play the role of `f^2` and `f̄^2`:
//! the homology product and the homology action.

use crate::complexes::{phi, psi, Chain, DGAlgebra, DGModule, HomologyData};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::hochschild::{Cochain, CochainFamily, GradedModule, GradedRing, HochschildFamily, ModuleCochainFamily};

/// Values indexed by tuples of basis elements (mixed radix, last slot fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleTable<T> {
    slots: Vec<usize>,
    values: Vec<T>,
}

impl<T> TupleTable<T> {
    fn build(slots: Vec<usize>, mut f: impl FnMut(&[usize]) -> Result<T>) -> Result<Self> {
        let len: usize = slots.iter().product();
        let mut values = Vec::with_capacity(len);
        let mut tuple = vec![0; slots.len()];
        for idx in 0..len {
            let mut rest = idx;
            for (t, &d) in tuple.iter_mut().zip(&slots).rev() {
                *t = rest % d;
                rest /= d;
            }
            values.push(f(&tuple)?);
        }
        Ok(TupleTable { slots, values })
    }

    pub fn get(&self, tuple: &[usize]) -> &T {
        let idx = tuple.iter().zip(&self.slots).fold(0, |acc, (&t, &d)| acc * d + t);
        &self.values[idx]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }
}

/// Sum of `table` over the basis expansion of slot `pos`, whose argument is
/// the vector `v`: `Σ_{k ∈ v} table(…, k, …)`.
fn expand_slot(table: &TupleTable<Chain>, zero: &Chain, prefix: &[usize], v: &BitVec, suffix: &[usize]) -> Chain {
    let mut out = zero.clone();
    let mut tuple = Vec::with_capacity(prefix.len() + 1 + suffix.len());
    for k in v.ones() {
        tuple.clear();
        tuple.extend_from_slice(prefix);
        tuple.push(k);
        tuple.extend_from_slice(suffix);
        out.add_assign(table.get(&tuple));
    }
    out
}

fn degree_of(basis: &crate::graded::GradedBasis, tuple: &[usize]) -> usize {
    tuple.iter().map(|&k| basis.degree(k)).sum()
}

/// Output of [`build_f`].
#[derive(Clone, Debug)]
pub struct TransferResult {
    pub f: HochschildFamily,
    arity_max: usize,
    a: Vec<TupleTable<Chain>>,
    phi_a: Vec<TupleTable<Chain>>,
}

impl TransferResult {
    pub fn arity_max(&self) -> usize {
        self.arity_max
    }

    /// The table of `A_i`, for `2 ≤ i ≤ arity_max`.
    pub fn a(&self, i: usize) -> &TupleTable<Chain> {
        &self.a[i - 2]
    }

    /// The table of `φ A_i`.
    pub fn phi_a(&self, i: usize) -> &TupleTable<Chain> {
        &self.phi_a[i - 2]
    }
}

fn not_a_cycle(what: &str, i: usize, tuple: &[usize], labels: impl Fn(usize) -> String, degree: usize) -> Error {
    let args: Vec<String> = tuple.iter().map(|&k| labels(k)).collect();
    Error::certification(
        "transfer",
        format!("{what}_{i}({}) in degree {degree} is not a cycle", args.join(", ")),
    )
}

/// Builds `A_2, …, A_{arity_max}` and `f^3, …, f^{arity_max}` for `alg`.
///
/// `ring` must be `GradedRing::from_homology(alg, hd)`.
pub fn build_f(alg: &DGAlgebra, hd: &HomologyData, ring: &GradedRing, arity_max: usize) -> Result<TransferResult> {
    assert!(arity_max >= 2, "arity_max must be at least 2");
    let c = alg.complex();
    let basis = hd.basis();
    let n = basis.dim();
    let mut f = CochainFamily::new(arity_max);
    let mut a: Vec<TupleTable<Chain>> = Vec::new();
    let mut phi_a: Vec<TupleTable<Chain>> = Vec::new();

    let a2 = TupleTable::build(vec![n; 2], |t| Ok(alg.mul(&hd.g_basis(t[0]), &hd.g_basis(t[1]))))?;
    let phi2 = TupleTable::build(vec![n; 2], |t| phi(hd, a2.get(t)))?;
    a.push(a2);
    phi_a.push(phi2);

    for i in 2..arity_max {
        let arity = i + 1;
        let lookup_a = |s: usize| &phi_a[s - 2];
        let table = TupleTable::build(vec![n; arity], |t| {
            let degree = degree_of(basis, t) + arity - 2;
            let zero = c.zero(degree);
            let mut sum = alg.mul(&hd.g_basis(t[0]), lookup_a(i).get(&t[1..]));
            sum.add_assign(&alg.mul(lookup_a(i).get(&t[..i]), &hd.g_basis(t[i])));
            for tb in 2..=i {
                let s = arity + 1 - tb;
                for k in 0..s {
                    let block = &t[k..k + tb];
                    let v = if tb == 2 {
                        ring.product().get(block).clone()
                    } else {
                        f.get(tb).expect("lower component").get(block).clone()
                    };
                    sum.add_assign(&expand_slot(lookup_a(s), &zero, &t[..k], &v, &t[k + tb..]));
                }
            }
            for s in 2..i {
                sum.add_assign(&alg.mul(lookup_a(s).get(&t[..s]), lookup_a(arity - s).get(&t[s..])));
            }
            if sum.degree != degree {
                return Err(Error::certification("transfer", "A_i has the wrong degree"));
            }
            if !c.is_cycle(&sum) {
                return Err(not_a_cycle("A", arity, t, |k| basis.label(k).to_string(), degree));
            }
            Ok(sum)
        })?;
        let component = Cochain::from_fn(vec![n; arity], n, arity as i64 - 2, |t| {
            hd.cl(table.get(t)).expect("cycle checked above")
        });
        f.insert(arity, component);
        let phi_next = TupleTable::build(vec![n; arity], |t| phi(hd, table.get(t)))?;
        a.push(table);
        phi_a.push(phi_next);
    }
    Ok(TransferResult { f, arity_max, a, phi_a })
}

/// Output of [`build_fbar`].
#[derive(Clone, Debug)]
pub struct ModuleTransferResult {
    pub fb: ModuleCochainFamily,
    abar: Vec<TupleTable<Chain>>,
}

impl ModuleTransferResult {
    /// The table of `Ā_i` (slots: `i − 1` group classes, then one fibre class).
    pub fn abar(&self, i: usize) -> &TupleTable<Chain> {
        &self.abar[i - 2]
    }
}

/// Builds `Ā_2, …, Ā_{arity_max}` and `f̄^3, …, f̄^{arity_max}` for the
/// action of the group algebra on `module`, given its transfer `tr`.
#[allow(clippy::too_many_arguments)]
pub fn build_fbar(
    module: &DGModule,
    hd_g: &HomologyData,
    hd_f: &HomologyData,
    ring: &GradedRing,
    hmod: &GradedModule,
    tr: &TransferResult,
    arity_max: usize,
) -> Result<ModuleTransferResult> {
    assert!(arity_max >= 2 && arity_max <= tr.arity_max(), "arity_max exceeds the algebra transfer");
    let fc = module.complex();
    let gb = hd_g.basis();
    let fbasis = hd_f.basis();
    let (ng, nf) = (gb.dim(), fbasis.dim());
    let slots = |arity: usize| {
        let mut s = vec![ng; arity - 1];
        s.push(nf);
        s
    };
    let label = |arity: usize| {
        move |pos: usize, k: usize| {
            if pos + 1 == arity {
                fbasis.label(k).to_string()
            } else {
                gb.label(k).to_string()
            }
        }
    };

    let mut fb = CochainFamily::new(arity_max);
    let mut abar: Vec<TupleTable<Chain>> = Vec::new();
    let mut psi_abar: Vec<TupleTable<Chain>> = Vec::new();
    let ab2 = TupleTable::build(slots(2), |t| Ok(module.act(&hd_g.g_basis(t[0]), &hd_f.g_basis(t[1]))))?;
    psi_abar.push(TupleTable::build(slots(2), |t| psi(hd_f, ab2.get(t)))?);
    abar.push(ab2);

    for i in 2..arity_max {
        let arity = i + 1;
        let psi_of = |s: usize| &psi_abar[s - 2];
        let table = TupleTable::build(slots(arity), |t| {
            let x = t[i];
            let degree = degree_of(gb, &t[..i]) + fbasis.degree(x) + arity - 2;
            let zero = fc.zero(degree);
            let mut sum = module.act(&hd_g.g_basis(t[0]), psi_of(i).get(&t[1..]));
            sum.add_assign(&module.act(tr.phi_a(i).get(&t[..i]), &hd_f.g_basis(x)));
            for tb in 2..=i {
                let s = arity + 1 - tb;
                // f^t on a block of group classes.
                for k in 0..s - 1 {
                    let block = &t[k..k + tb];
                    let v = if tb == 2 {
                        ring.product().get(block).clone()
                    } else {
                        tr.f.get(tb).expect("lower component").get(block).clone()
                    };
                    sum.add_assign(&expand_slot(psi_of(s), &zero, &t[..k], &v, &t[k + tb..]));
                }
                // f̄^t on the trailing block ending in x.
                let start = arity - tb;
                let block = &t[start..];
                let v = if tb == 2 {
                    hmod.action().get(block).clone()
                } else {
                    fb.get(tb).expect("lower component").get(block).clone()
                };
                sum.add_assign(&expand_slot(psi_of(s), &zero, &t[..start], &v, &[]));
            }
            for s in 2..i {
                sum.add_assign(&module.act(tr.phi_a(s).get(&t[..s]), psi_of(arity - s).get(&t[s..])));
            }
            if sum.degree != degree {
                return Err(Error::certification("transfer", "Ā_i has the wrong degree"));
            }
            if !fc.is_cycle(&sum) {
                let lab = label(arity);
                let args: Vec<String> = t.iter().enumerate().map(|(p, &k)| lab(p, k)).collect();
                return Err(Error::certification(
                    "transfer",
                    format!("Ā_{arity}({}) in degree {degree} is not a cycle", args.join(", ")),
                ));
            }
            Ok(sum)
        })?;
        let component = Cochain::from_fn(slots(arity), nf, arity as i64 - 2, |t| {
            hd_f.cl(table.get(t)).expect("cycle checked above")
        });
        fb.insert(arity, component);
        psi_abar.push(TupleTable::build(slots(arity), |t| psi(hd_f, table.get(t)))?);
        abar.push(table);
    }
    Ok(ModuleTransferResult { fb, abar })
}
