//! Building a twisting cochain by hand on the minimal 2-sphere and reading
//! off the spectral sequence of the twisted tensor product.
//!
//! `cargo run --example twisted_complex`

use std::collections::BTreeMap;

use fibress::base_cochains::{GradedCochain, SimplicialSet};
use fibress::gf2::{BitVec, TieBreak};
use fibress::hochschild::{CochainFamily, GradedModule, GradedRing};
use fibress::predifferential::{alpha, beta, solve_h0, SolveOutcome};
use fibress::spectral::{format_pages, ss_pages, CapConvention, TwistedComplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = SimplicialSet::minimal_sphere(2);
    // H_*(S^1) with only the unit products.
    let ring = GradedRing::monomial(&[("1", 0), ("e", 1)], |x, y| match (x, y) {
        (0, k) | (k, 0) => Some(k),
        _ => None,
    })?;
    let f = CochainFamily::zero_hochschild(&ring, 3);
    let module = GradedModule::regular(&ring);
    let fb = CochainFamily::zero_module(&ring, &module, 3);

    // The clutching class: e on the top cell.
    let e = BitVec::unit(ring.dim(), 1);
    let seed = GradedCochain::from_fn(&b, 2, ring.dim(), |_| e.clone());
    let seeds = BTreeMap::from([(2, seed)]);
    let h0 = match solve_h0(&b, &ring, &f, &seeds, 3, TieBreak::Canonical)? {
        SolveOutcome::Solved(h0) => h0,
        SolveOutcome::Obstructed { degree, .. } => panic!("obstructed in degree {degree}"),
    };
    let h = alpha(&b, &ring, &f, &h0)?;
    let hbar = beta(&b, &module, &h0, &fb)?;
    let certified = h.residual(&b).iter().all(|(_, r)| r.is_zero());
    println!("δh = h⌣h: {certified}, hbar = h: {}", h == hbar);

    let tc = TwistedComplex::new(&b, module.basis(), &hbar, CapConvention::BackFace)?;
    print!("{}", format_pages(&ss_pages(tc.filtered(), 4)?, 2));
    Ok(())
}
