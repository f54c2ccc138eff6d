use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use fibress::cli::{run_pipeline, PipelineOptions};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fibress(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibress")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn run_exit_codes() {
    let hopf = fixture("hopf.bundle");
    let (code, out, _) = fibress(&["run", hopf.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: pass"), "{out}");

    let (code, _, err) = fibress(&["run", "/nonexistent.bundle"]);
    assert_eq!(code, 2, "{err}");

    let (code, _, err) = fibress(&["run", hopf.to_str().unwrap(), "--arity-max", "1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn props_subcommand() {
    let (code, out, _) = fibress(&["props", "--trials", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("trials 0"));
    let (code, out, _) = fibress(&["props", "--seed", "9", "--trials", "25"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn output_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.txt");
    let (code, out, _) = fibress(&["run", fixture("product.bundle").to_str().unwrap(), "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(fs::read_to_string(path).unwrap().contains("verdict: pass"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let opts = PipelineOptions::default();
    for name in ["hopf.bundle", "massey.bundle", "s7.bundle"] {
        let a = run_pipeline(&fixture(name), &opts).unwrap().text();
        let b = run_pipeline(&fixture(name), &opts).unwrap().text();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn input_hash_tracks_every_input_file() {
    let dir = TempDir::new().unwrap();
    for f in ["hopf.bundle", "s2_min.sset", "s1.dga", "s3_hopf.filt"] {
        fs::copy(fixture(f), dir.path().join(f)).unwrap();
    }
    let bundle = dir.path().join("hopf.bundle");
    let opts = PipelineOptions::default();
    let before = run_pipeline(&bundle, &opts).unwrap();
    assert_eq!(before.input_hash, run_pipeline(&fixture("hopf.bundle"), &opts).unwrap().input_hash);

    let dga = dir.path().join("s1.dga");
    let text = fs::read_to_string(&dga).unwrap();
    fs::write(&dga, format!("{text}# edited\n")).unwrap();
    let after = run_pipeline(&bundle, &opts).unwrap();
    assert_ne!(before.input_hash, after.input_hash);
}

#[test]
fn explicit_module_matches_regular_fibre() {
    let opts = PipelineOptions::default();
    let a = run_pipeline(&fixture("hopf.bundle"), &opts).unwrap();
    let b = run_pipeline(&fixture("hopf_dgm.bundle"), &opts).unwrap();
    assert_eq!(a.hbar, b.hbar);
    assert_eq!(
        fibress::spectral::format_pages(&a.pages, 2),
        fibress::spectral::format_pages(&b.pages, 2)
    );
}
