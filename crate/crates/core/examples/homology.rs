//! GF(2) homology of a DGA with explicit cycle choices.
//!
//! `cargo run --example homology`

use std::path::Path;

use fibress::cli::formats::{parse_dga, read};
use fibress::complexes::HomologyData;
use fibress::gf2::{kernel_basis, solve, BitVec, Matrix, TieBreak};
use fibress::hochschild::GradedRing;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Plain linear algebra first.
    let m = Matrix::from_bit_rows(&[&[1, 1, 0], &[0, 1, 1]]);
    println!("rank {} kernel {:?}", m.rank(), kernel_basis(&m).vectors());
    println!("solve m·x = (1,0): {:?}", solve(&m, &BitVec::from_bits(&[1, 0]))?);

    // A non-minimal model of the circle: two valid cycle choices per class.
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fat_s1.dga");
    let alg = parse_dga(&read(&path)?, &path)?;
    for tie in [TieBreak::Canonical, TieBreak::Reversed] {
        let hd = HomologyData::compute_with(alg.complex(), tie)?;
        let ring = GradedRing::from_homology(&alg, &hd)?;
        print!("{tie:?}: H = {:?}, reps", hd.basis().labels());
        for k in 0..hd.basis().dim() {
            print!(" {}", alg.complex().format(&hd.g_basis(k)));
        }
        println!(", commutative {}", ring.is_commutative());
    }
    Ok(())
}
