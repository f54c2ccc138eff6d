use std::fs;
use std::path::{Path, PathBuf};

use fibress::cli::formats::{parse_dga, parse_sset, read};
use fibress::cli::{run_pipeline, PipelineOptions};
use fibress::error::Error;
use tempfile::TempDir;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn parse_line(e: &Error) -> usize {
    match e {
        Error::Parse { line, .. } => *line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn boundary_squaring_to_nonzero_names_the_line() {
    let text = "basis 0 p\nbasis 1 q\nbasis 2 r\nunit p\nd q = p\nd r = q\n";
    let e = parse_dga(text, Path::new("bad.dga")).unwrap_err();
    assert_eq!(parse_line(&e), 6, "{e}");
    assert!(e.to_string().starts_with("bad.dga:6:"), "{e}");
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn unknown_names_are_reported() {
    let e = parse_dga("basis 0 1\nunit 1\nmul 1 z = 1\n", Path::new("x.dga")).unwrap_err();
    assert_eq!(parse_line(&e), 3);
    let e = parse_sset("simplex 0 a\nsimplex 1 ab faces a b2\n", Path::new("x.sset")).unwrap_err();
    assert_eq!(parse_line(&e), 2);
}

#[test]
fn simplicial_identity_violation_is_rejected() {
    // Two edges out of one vertex would be fine; a triangle whose edges do not
    // meet violates d_i d_j = d_{j-1} d_i.
    let text = "simplex 0 a\nsimplex 0 b\nsimplex 0 c\n\
                simplex 1 ab faces b a\nsimplex 1 bc faces c b\nsimplex 1 ac faces c a\n\
                simplex 2 abc faces bc ab ab\n";
    let e = parse_sset(text, Path::new("t.sset")).unwrap_err();
    assert_eq!(parse_line(&e), 7, "{e}");
}

#[test]
fn every_fixture_parses() {
    for entry in fs::read_dir(fixtures()).unwrap() {
        let p = entry.unwrap().path();
        let text = read(&p).unwrap();
        match p.extension().and_then(|e| e.to_str()) {
            Some("dga") => drop(parse_dga(&text, &p).unwrap()),
            Some("sset") => drop(parse_sset(&text, &p).unwrap()),
            _ => {}
        }
    }
}

#[test]
fn bundle_errors_carry_the_file() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "x.bundle", "base missing.sset\ngroup s1.dga\nfiber group\n");
    let e = run_pipeline(&b, &PipelineOptions::default()).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(e.to_string().contains("missing.sset"), "{e}");
}

#[test]
fn connectivity_is_checked_against_homology() {
    let dir = TempDir::new().unwrap();
    for f in ["s2_min.sset", "s1.dga"] {
        fs::copy(fixtures().join(f), dir.path().join(f)).unwrap();
    }
    let b = write(&dir, "x.bundle", "base s2_min.sset\ngroup s1.dga\nfiber group\nconnectivity 1\n");
    let e = run_pipeline(&b, &PipelineOptions::default()).unwrap_err();
    assert_eq!(e.exit_code(), 2, "{e}");
}
