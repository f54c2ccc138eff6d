//! Spectral sequence of an explicitly filtered complex, compared page by page
//! with the one computed from a twisting cochain.
//!
//! `cargo run --example oracle`

use std::path::Path;

use fibress::cli::formats::{parse_filtered, read};
use fibress::cli::{run_pipeline, PipelineOptions};
use fibress::spectral::{compare_pages, format_pages, oracle_ss};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let filt = dir.join("s3_hopf.filt");
    let fc = parse_filtered(&read(&filt)?, &filt)?;
    let pages = oracle_ss(&fc, 4)?;
    print!("{}", format_pages(&pages, 1));

    let twisted = run_pipeline(&dir.join("hopf.bundle"), &PipelineOptions::default())?;
    let cmp = compare_pages(&twisted.pages, &pages, 2);
    println!("compared {} pages, agree: {}", cmp.pages_compared, cmp.passed());
    Ok(())
}
