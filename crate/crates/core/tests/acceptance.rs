//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use fibress::cli::formats::{parse_dga, parse_dgm, read};
use fibress::cli::suite::cup1_off_by_one;
use fibress::cli::{load_bundle, run_loaded, run_pipeline, run_property_suite, run_property_suite_with, PipelineOptions, PipelineReport};
use fibress::complexes::{Chain, DGAlgebra, DGModule, HomologyData};
use fibress::gf2::{BitVec, TieBreak};
use fibress::hochschild::{module_residual, twisting_residual, GradedModule, GradedRing};
use fibress::spectral::{CapConvention, SpectralPage, TwistedComplex};
use fibress::transfer::{build_f, build_fbar};

const BUNDLES: [&str; 8] = ["hopf", "hopf_dgm", "fat_hopf", "product", "s7", "noncomm", "massey", "massey_point"];
const ALGEBRAS: [&str; 5] = ["s1", "s3", "massey", "fat_s1", "noncomm"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: u64, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e <= Duration::from_secs(limit), format!("{what} took {e:.1?}, limit {limit}s"))?;
    Ok(e)
}

fn run(name: &str, tie: TieBreak) -> Result<PipelineReport, String> {
    let opts = PipelineOptions { tie_break: tie, ..Default::default() };
    run_pipeline(&fixture(&format!("{name}.bundle")), &opts).map_err(|e| format!("{name}: {e}"))
}

fn page(pages: &[SpectralPage], r: usize) -> &SpectralPage {
    pages.iter().find(|p| p.r == r).expect("page computed")
}

fn all_zero(p: &SpectralPage) -> bool {
    p.differentials.values().all(|d| d.is_zero())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let r = run_property_suite(2024, 200);
    let e = within(t, 10, "suite")?;
    ensure(r.passed(), r.text())?;
    Ok(format!("200 trials over 4 rings in {e:.2?}"))
}

fn certify_module(alg: &DGAlgebra, module: &DGModule, label: &str) -> Result<usize, String> {
    let err = |e: fibress::error::Error| format!("{label}: {e}");
    let hd = HomologyData::compute(alg.complex()).map_err(err)?;
    let ring = GradedRing::from_homology(alg, &hd).map_err(err)?;
    let tr = build_f(alg, &hd, &ring, 5).map_err(err)?;
    let mut checked = 0;
    for (m, r) in twisting_residual(&ring, &tr.f) {
        ensure(m <= 6 && r.is_zero(), format!("{label}: f residual at arity {m}"))?;
        checked += 1;
    }
    for i in 2..=5 {
        ensure(tr.a(i).values().iter().all(|z| alg.complex().is_cycle(z)), format!("{label}: A_{i} not a cycle"))?;
    }
    let hd_f = HomologyData::compute(module.complex()).map_err(err)?;
    let hmod = GradedModule::from_homology(&ring, module, &hd, &hd_f).map_err(err)?;
    let mt = build_fbar(module, &hd, &hd_f, &ring, &hmod, &tr, 5).map_err(err)?;
    for (m, r) in module_residual(&ring, &hmod, &tr.f, &mt.fb) {
        ensure(r.is_zero(), format!("{label}: fbar residual at arity {m}"))?;
        checked += 1;
    }
    for i in 2..=5 {
        ensure(
            mt.abar(i).values().iter().all(|z| module.complex().is_cycle(z)),
            format!("{label}: Abar_{i} not a cycle"),
        )?;
    }
    Ok(checked)
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    for name in ALGEBRAS {
        let path = fixture(&format!("{name}.dga"));
        let alg = parse_dga(&read(&path).map_err(|e| e.to_string())?, &path).map_err(|e| e.to_string())?;
        let t = Instant::now();
        checked += certify_module(&alg, &DGModule::regular(&alg), &format!("{name} regular"))?;
        checked += certify_module(&alg, &DGModule::point(&alg), &format!("{name} point"))?;
        slowest = slowest.max(within(t, 30, name)?);
    }
    let path = fixture("s1.dga");
    let alg = parse_dga(&read(&path).unwrap(), &path).map_err(|e| e.to_string())?;
    let mpath = fixture("s1_regular.dgm");
    let m = parse_dgm(&read(&mpath).unwrap(), &mpath, &alg).map_err(|e| e.to_string())?;
    checked += certify_module(&alg, &m, "s1_regular.dgm")?;
    Ok(format!("{checked} residuals zero up to arity 6, slowest fixture {slowest:.2?}"))
}

/// Every chain of degree `n` whose boundary is `target`, by enumeration.
fn preimages(alg: &DGAlgebra, n: usize, target: &Chain) -> Vec<Chain> {
    let c = alg.complex();
    let dim = c.dim(n);
    (0u64..1 << dim)
        .map(|mask| Chain::new(n, BitVec::from_indices(dim, (0..dim).filter(|i| mask >> i & 1 == 1))))
        .filter(|u| c.apply_boundary(u).is_some_and(|b| b.coords == target.coords))
        .collect()
}

fn criterion_3() -> Outcome {
    let path = fixture("massey.dga");
    let alg = parse_dga(&read(&path).unwrap(), &path).map_err(|e| e.to_string())?;
    let c = alg.complex();
    let hd = HomologyData::compute(c).map_err(|e| e.to_string())?;
    let ring = GradedRing::from_homology(&alg, &hd).map_err(|e| e.to_string())?;
    let tr = build_f(&alg, &hd, &ring, 3).map_err(|e| e.to_string())?;
    let chain = |name: &str| {
        let (n, i) = c.lookup(name).expect("named cell");
        c.basis_chain(n, i)
    };
    let class = |name: &str| hd.cl(&chain(name)).unwrap().first_one().expect("nonzero class");
    let (a, b, cc) = (chain("a"), chain("b"), chain("c"));
    let f3 = tr.f.get(3).unwrap().get(&[class("a"), class("b"), class("c")]).clone();
    let g = {
        let mut z = c.zero(4);
        for k in f3.ones() {
            z.add_assign(&hd.g_basis(k));
        }
        z
    };
    let us = preimages(&alg, 3, &alg.mul(&a, &b));
    let vs = preimages(&alg, 3, &alg.mul(&b, &cc));
    ensure(!us.is_empty() && !vs.is_empty(), "Massey product undefined")?;
    let mut pairs = 0;
    for u in &us {
        for v in &vs {
            let mut m = alg.mul(u, &cc);
            m.add_assign(&alg.mul(&a, v));
            m.add_assign(&g);
            ensure(!preimages(&alg, 5, &m).is_empty(), "f3 differs from the Massey product")?;
            pairs += 1;
        }
    }
    ensure(!f3.is_zero(), "f3 vanishes")?;
    Ok(format!("f3([a],[b],[c]) = {} agrees over {pairs} defining systems", hd.basis().format(&f3)))
}

fn criterion_4() -> Outcome {
    for name in BUNDLES {
        let r = run(name, TieBreak::Canonical)?;
        ensure(r.passed(), format!("{name} verdict fail"))?;
    }
    let p = run("product", TieBreak::Canonical)?;
    ensure(p.h.is_zero() && p.hbar.is_zero(), "product: h ≠ 0")?;
    ensure(p.pages.iter().all(all_zero), "product: nonzero differential")?;
    Ok(format!("{} bundles certified, product collapses at E2", BUNDLES.len()))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let r = run("hopf", TieBreak::Canonical)?;
    let e = within(t, 10, "hopf")?;
    ensure(page(&r.pages, 2).d_rank(2, 0) == 1, "d2 at (2,0) not an isomorphism")?;
    let inf = r.pages.last().unwrap();
    let totals: Vec<usize> = (0..=4).map(|n| inf.total_dim(n)).collect();
    ensure(totals == [1, 0, 0, 1, 0], format!("E_inf totals {totals:?}"))?;
    let (_, cmp) = r.oracle.as_ref().ok_or("no oracle")?;
    ensure(cmp.passed(), format!("oracle mismatch {:?}", cmp.first_discrepancy))?;
    Ok(format!("d2 rank 1, E_inf = H(S3), oracle agrees on {} pages, {e:.2?}", cmp.pages_compared))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let r = run("s7", TieBreak::Canonical)?;
    let e = within(t, 30, "s7")?;
    ensure(all_zero(page(&r.pages, 2)) && all_zero(page(&r.pages, 3)), "d2 or d3 nonzero")?;
    ensure(page(&r.pages, 4).d_rank(4, 0) == 1, "d4 at (4,0) not an isomorphism")?;
    ensure(r.h0.get(2).is_zero() && r.h0.get(3).is_zero(), "h0 nonzero below degree 4")?;
    let (n, checks) = r.shih.as_ref().ok_or("no connectivity checks")?;
    for (rr, what) in [(2, "h0^2 = 0"), (3, "h0^3 = 0"), (4, "h0^4 is a cocycle"), (4, "h^4(a) = h0^4·a")] {
        ensure(checks.iter().any(|c| c.r == rr && c.assertion == what), format!("missing check `{what}`"))?;
    }
    if let Some(c) = checks.iter().find(|c| !c.passed) {
        return Err(format!("r = {}: {}", c.r, c.assertion));
    }
    let (_, cmp) = r.oracle.as_ref().ok_or("no oracle")?;
    ensure(cmp.passed(), "oracle mismatch")?;
    Ok(format!("d4 rank 1, {} checks for n = {n}, {e:.2?}", checks.len()))
}

fn page_shape(pages: &[SpectralPage]) -> Vec<(usize, i64, i64, usize, usize)> {
    pages
        .iter()
        .flat_map(|p| p.cells.keys().map(move |&(a, b)| (p.r, a, b, p.dim(a, b), p.d_rank(a, b))))
        .collect()
}

fn criterion_7() -> Outcome {
    let mut differing = Vec::new();
    for name in BUNDLES {
        let a = run(name, TieBreak::Canonical)?;
        let b = run(name, TieBreak::Reversed)?;
        ensure(a.passed() == b.passed(), format!("{name}: verdict changed"))?;
        ensure(page_shape(&a.pages) == page_shape(&b.pages), format!("{name}: pages changed"))?;
        if (2..=a.arity_max).any(|i| a.transfer.a(i).values() != b.transfer.a(i).values()) {
            differing.push(name);
        }
    }
    ensure(differing.contains(&"fat_hopf"), "reversed tie-break left every A_i unchanged")?;
    Ok(format!("pages invariant, A_i changed on {}", differing.join(", ")))
}

fn criterion_8() -> Outcome {
    let r = run_property_suite_with(2024, 200, cup1_off_by_one);
    ensure(!r.passed(), "off-by-one cup1 passed the suite")?;
    let lb = load_bundle(&fixture("noncomm.bundle"), None).map_err(|e| e.to_string())?;
    let rep = run_loaded(&lb, &PipelineOptions::default()).map_err(|e| e.to_string())?;
    let fb = rep.fibre_homology.basis();
    ensure(TwistedComplex::new(&rep.base, fb, &rep.hbar, CapConvention::BackFace).is_ok(), "correct cap rejected")?;
    match TwistedComplex::new(&rep.base, fb, &rep.hbar, CapConvention::FrontFace) {
        Ok(_) => Err("front-face cap passed d∘d = 0".into()),
        Err(e) => Ok(format!("cup1 mutant fails Hirsch, front-face cap: {e}")),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cochain identity suite", criterion_1),
        ("transfer certification", criterion_2),
        ("Massey oracle", criterion_3),
        ("bundle certification", criterion_4),
        ("Hopf fibration", criterion_5),
        ("S7 fibration", criterion_6),
        ("tie-break invariance", criterion_7),
        ("mutants caught", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {title} ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
