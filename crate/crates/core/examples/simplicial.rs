//! Simplicial sets with degenerate simplices, normalized chains and
//! Alexander–Whitney faces.
//!
//! `cargo run --example simplicial`

use std::path::Path;

use fibress::base_cochains::{normalized_chains, SimplicialSet};
use fibress::cli::formats::{parse_sset, read};
use fibress::complexes::HomologyData;

fn describe(name: &str, b: &SimplicialSet) -> Result<(), Box<dyn std::error::Error>> {
    b.check_identities()?;
    let hd = HomologyData::compute(&normalized_chains(b)?)?;
    let betti: Vec<usize> = (0..=b.dim()).map(|n| hd.dim(n)).collect();
    println!("{name}: dim {}, euler {}, betti {betti:?}", b.dim(), b.euler_characteristic());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    describe("standard 3-simplex", &SimplicialSet::standard_simplex(3))?;
    describe("boundary of the 4-simplex", &SimplicialSet::boundary_of_simplex(4))?;
    let s2 = SimplicialSet::minimal_sphere(2);
    describe("minimal 2-sphere", &s2)?;

    // Every face of the top cell of the minimal sphere is degenerate.
    let top = s2.simplex(2, 0);
    for i in 0..=2 {
        println!("  d{i}({}) = {}", s2.format(&top), s2.format(&s2.face(&top, i)));
    }
    let s = top.degeneracy(1);
    println!("  front2({0}) = {1}, back1({0}) = {2}", s2.format(&s), s2.format(&s2.front(&s, 2)), s2.format(&s2.back(&s, 1)));

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/s2_tetra.sset");
    describe("s2_tetra.sset", &parse_sset(&read(&path)?, &path)?)?;
    Ok(())
}
