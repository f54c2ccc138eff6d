//! Transferring the product to homology produces a triple Massey product as
//! the arity-3 operation.
//!
//! `cargo run --example massey`

use std::path::Path;

use fibress::cli::formats::{parse_dga, read};
use fibress::complexes::HomologyData;
use fibress::hochschild::{twisting_residual, GradedRing};
use fibress::transfer::build_f;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/massey.dga");
    let alg = parse_dga(&read(&path)?, &path)?;
    let hd = HomologyData::compute(alg.complex())?;
    let ring = GradedRing::from_homology(&alg, &hd)?;
    let tr = build_f(&alg, &hd, &ring, 5)?;

    let basis = ring.basis();
    let f3 = tr.f.get(3).expect("arity 3 computed");
    for (args, value) in f3.entries().filter(|(_, v)| !v.is_zero()) {
        let labels: Vec<&str> = args.iter().map(|&k| basis.label(k)).collect();
        println!("f3({}) = {}", labels.join(", "), basis.format(value));
    }
    for (m, r) in twisting_residual(&ring, &tr.f) {
        println!("twisting equation at arity {m}: {}", if r.is_zero() { "holds" } else { "FAILS" });
    }
    Ok(())
}
