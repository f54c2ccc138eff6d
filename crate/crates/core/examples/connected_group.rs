//! S^3 → S^7 → S^4: with a 2-connected group the twisting cochain is
//! determined by a single cocycle and the first differential is d4.
//!
//! `cargo run --example connected_group`

use std::path::Path;

use fibress::cli::{run_pipeline, PipelineOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/s7.bundle");
    let report = run_pipeline(&path, &PipelineOptions::default())?;
    if let Some((n, checks)) = &report.shih {
        println!("H_i(G) = 0 for 0 < i < {n}");
        for c in checks {
            println!("  r = {}: {} [{}]", c.r, c.assertion, if c.passed { "ok" } else { "FAIL" });
        }
    }
    for p in &report.pages {
        let nonzero: Vec<_> = p.differentials.keys().filter(|&&(a, b)| p.d_rank(a, b) > 0).collect();
        println!("d{} nonzero at {nonzero:?}", p.r);
    }
    Ok(())
}
