//! The full pipeline on the Hopf fibration S^1 → S^3 → S^2.
//!
//! `cargo run --example hopf_pipeline`

use std::path::Path;

use fibress::cli::{run_pipeline, PipelineOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/hopf.bundle");
    let report = run_pipeline(&path, &PipelineOptions::default())?;
    print!("{}", report.text());

    let e2 = report.pages.iter().find(|p| p.r == 2).expect("E2");
    println!("d2 out of (2,0) has rank {}", e2.d_rank(2, 0));
    let einf = report.pages.last().expect("pages");
    println!("E_inf total dims: {:?}", (0..=3).map(|n| einf.total_dim(n)).collect::<Vec<_>>());
    Ok(())
}
