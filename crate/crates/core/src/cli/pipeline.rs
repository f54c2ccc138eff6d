//! Loading a `.bundle` and running every stage on it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::formats::{parse_bundle, parse_dga, parse_dgm, parse_filtered, parse_sset, read, FiberSpec, FixtureBundle};
use crate::base_cochains::{GradedCochain, SimplicialSet};
use crate::complexes::{Chain, DGAlgebra, DGModule, HomologyData};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, TieBreak};
use crate::hochschild::{module_residual, twisting_residual, GradedModule, GradedRing};
use crate::predifferential::{
    alpha, beta, required_arity, required_arity_twisting, shih_form, solve_h0, H0Cochain, ShihCheck,
    SolveOutcome, TwistingCochainB,
};
use crate::spectral::{
    check_page_invariants, compare_pages, format_pages, oracle_ss, ss_pages, CapConvention, PageComparison,
    SpectralPage, TwistedComplex,
};
use crate::transfer::{build_f, build_fbar, ModuleTransferResult, TransferResult};

/// Command-line overrides for a run.
#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub deg_max: Option<usize>,
    pub arity_max: Option<usize>,
    pub oracle: Option<PathBuf>,
    pub tie_break: TieBreak,
}

/// Parsed and validated inputs of one bundle.
#[derive(Clone, Debug)]
pub struct LoadedBundle {
    pub bundle: FixtureBundle,
    pub base: SimplicialSet,
    pub group: DGAlgebra,
    pub fiber: DGModule,
    pub oracle: Option<(PathBuf, crate::spectral::FilteredComplex)>,
    /// SHA-256 over every input file, in a fixed order.
    pub input_hash: String,
}

fn file_label(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned())
}

pub fn load_bundle(path: &Path, oracle_override: Option<&Path>) -> Result<LoadedBundle> {
    let mut hasher = Sha256::new();
    let mut absorb = |label: &str, text: &str| {
        hasher.update(label.as_bytes());
        hasher.update([0]);
        hasher.update(text.as_bytes());
        hasher.update([0]);
    };
    let text = read(path)?;
    absorb("bundle", &text);
    let bundle = parse_bundle(&text, path)?;
    let base_text = read(&bundle.base)?;
    absorb("base", &base_text);
    let base = parse_sset(&base_text, &bundle.base)?;
    let group_text = read(&bundle.group)?;
    absorb("group", &group_text);
    let group = parse_dga(&group_text, &bundle.group)?;
    let fiber = match &bundle.fiber {
        FiberSpec::Point => DGModule::point(&group),
        FiberSpec::Group => DGModule::regular(&group),
        FiberSpec::File(p) => {
            let t = read(p)?;
            absorb("fiber", &t);
            parse_dgm(&t, p, &group)?
        }
    };
    let oracle_path = oracle_override.map(Path::to_path_buf).or_else(|| bundle.oracle.clone());
    let oracle = match oracle_path {
        Some(p) => {
            let t = read(&p)?;
            absorb("oracle", &t);
            let fc = parse_filtered(&t, &p)?;
            Some((p, fc))
        }
        None => None,
    };
    let input_hash = hasher.finalize().iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    });
    Ok(LoadedBundle {
        bundle,
        base,
        group,
        fiber,
        oracle,
        input_hash,
    })
}

/// Converts the bundle's seed lines to cochains `h₀^p ∈ C^p(B, H_{p−1}(G))`.
fn seeds(lb: &LoadedBundle, hd: &HomologyData) -> Result<BTreeMap<usize, GradedCochain>> {
    let c = lb.group.complex();
    let n = hd.basis().dim();
    let file = &lb.bundle.path;
    let err = |line: usize, message: String| Error::Parse {
        file: file.clone(),
        line,
        message,
    };
    let mut out: BTreeMap<usize, GradedCochain> = BTreeMap::new();
    for (p, simplex, terms, line) in &lb.bundle.seeds {
        let (p, line) = (*p, *line);
        let (dim, idx) = lb
            .base
            .lookup(simplex)
            .ok_or_else(|| err(line, format!("unknown simplex `{simplex}`")))?;
        if dim != p {
            return Err(err(line, format!("`{simplex}` has dimension {dim}, not {p}")));
        }
        let q = p - 1;
        let mut chain = Chain::new(q, BitVec::zeros(if q < c.num_degrees() { c.dim(q) } else { 0 }));
        for t in terms {
            let (d, i) = c.lookup(t).ok_or_else(|| err(line, format!("unknown group element `{t}`")))?;
            if d != q {
                return Err(err(line, format!("`{t}` has degree {d}, expected {q}")));
            }
            chain.coords.flip(i);
        }
        let class = hd
            .cl(&chain)
            .map_err(|_| err(line, format!("seed value on `{simplex}` is not a cycle")))?;
        let cochain = out.entry(p).or_insert_with(|| GradedCochain::zero(&lb.base, p, n));
        let mut v = cochain.get(idx).clone();
        v.add_assign(&class);
        cochain.set(idx, v);
    }
    Ok(out)
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub bundle_name: String,
    pub input_hash: String,
    pub deg_max: usize,
    pub arity_max: usize,
    pub tie_break: TieBreak,
    pub base: SimplicialSet,
    pub ring: GradedRing,
    pub fibre_homology: GradedModule,
    pub transfer: TransferResult,
    pub module_transfer: ModuleTransferResult,
    pub certified_arities: Vec<usize>,
    pub h0: H0Cochain,
    pub h: TwistingCochainB,
    pub hbar: TwistingCochainB,
    pub pages: Vec<SpectralPage>,
    /// `(n, checks)` when the bundle declares connectivity `n − 1 ≥ 1`.
    pub shih: Option<(usize, Vec<ShihCheck>)>,
    pub oracle: Option<(String, PageComparison)>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.shih.as_ref().is_none_or(|(_, c)| c.iter().all(|x| x.passed))
            && self.oracle.as_ref().is_none_or(|(_, c)| c.passed())
    }

    /// Deterministic plain-text rendering.
    pub fn text(&self) -> String {
        let mut o = String::new();
        let gb = self.ring.basis();
        let fbasis = self.fibre_homology.basis();
        let _ = writeln!(o, "bundle: {}", self.bundle_name);
        let _ = writeln!(o, "input-sha256: {}", self.input_hash);
        let _ = writeln!(o, "deg_max: {}", self.deg_max);
        let _ = writeln!(o, "arity_max: {}", self.arity_max);
        let _ = writeln!(
            o,
            "tie_break: {}",
            match self.tie_break {
                TieBreak::Canonical => "canonical",
                TieBreak::Reversed => "reversed",
            }
        );
        let _ = writeln!(o, "\n[group homology]");
        for k in 0..gb.dim() {
            let _ = writeln!(o, "  {} (degree {})", gb.label(k), gb.degree(k));
        }
        let _ = writeln!(o, "\n[fibre homology]");
        for k in 0..fbasis.dim() {
            let _ = writeln!(o, "  {} (degree {})", fbasis.label(k), fbasis.degree(k));
        }
        let _ = writeln!(o, "\n[f]");
        for (i, c) in self.transfer.f.components() {
            let entries: Vec<_> = c.entries().filter(|(_, v)| !v.is_zero()).collect();
            let _ = writeln!(o, "  f^{i}: {} nonzero values", entries.len());
            for (t, v) in entries {
                let args: Vec<&str> = t.iter().map(|&k| gb.label(k)).collect();
                let _ = writeln!(o, "    f^{i}({}) = {}", args.join(", "), gb.format(v));
            }
        }
        let _ = writeln!(o, "\n[fbar]");
        for (i, c) in self.module_transfer.fb.components() {
            let entries: Vec<_> = c.entries().filter(|(_, v)| !v.is_zero()).collect();
            let _ = writeln!(o, "  fbar^{i}: {} nonzero values", entries.len());
            for (t, v) in entries {
                let mut args: Vec<&str> = t[..t.len() - 1].iter().map(|&k| gb.label(k)).collect();
                args.push(fbasis.label(t[t.len() - 1]));
                let _ = writeln!(o, "    fbar^{i}({}) = {}", args.join(", "), fbasis.format(v));
            }
        }
        let _ = writeln!(o, "\n[certifications]");
        let arities: Vec<String> = self.certified_arities.iter().map(usize::to_string).collect();
        let _ = writeln!(o, "  δf = f⌣₁f at arities {}: ok", arities.join(","));
        let _ = writeln!(o, "  fbar compatibility at arities {}: ok", arities.join(","));
        let _ = writeln!(o, "  h0 equation in cochain degrees 3..={}: ok", self.deg_max + 1);
        let _ = writeln!(o, "  alpha δh = h⌣h: ok");
        let _ = writeln!(o, "  beta δh̄ = h̄⌣h̄: ok");
        let _ = writeln!(o, "  twisted complex d∘d = 0: ok");
        let _ = writeln!(o, "  page invariants: ok");
        let _ = writeln!(o, "\n[h0]");
        for (i, c) in self.h0.components() {
            let _ = writeln!(o, "  h0^{i}:{}", if c.is_zero() { " 0" } else { "" });
            for (s, v) in c.values().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let _ = writeln!(o, "    {} -> {}", self.base.name(i, s), gb.format(v));
            }
        }
        for (title, h, basis) in [("h", &self.h, gb), ("hbar", &self.hbar, fbasis)] {
            let _ = writeln!(o, "\n[{title}]");
            for (k, c) in h.components() {
                let _ = writeln!(o, "  {title}^{k}:{}", if c.is_zero() { " 0" } else { "" });
                for a in 0..basis.dim() {
                    let col = c.column(a);
                    for (s, v) in col.values().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        let _ = writeln!(
                            o,
                            "    {title}^{k}({})({}) = {}",
                            self.base.name(k, s),
                            basis.label(a),
                            basis.format(v)
                        );
                    }
                }
            }
        }
        let _ = writeln!(o, "\n[pages]");
        for line in format_pages(&self.pages, 2).lines() {
            let _ = writeln!(o, "  {line}");
        }
        if let Some((n, checks)) = &self.shih {
            let _ = writeln!(o, "\n[connected group, n = {n}]");
            for c in checks {
                let _ = writeln!(o, "  r={} {}: {}", c.r, c.assertion, if c.passed { "pass" } else { "FAIL" });
            }
        }
        if let Some((name, cmp)) = &self.oracle {
            let _ = writeln!(o, "\n[oracle {name}]");
            let _ = writeln!(o, "  pages compared: {}", cmp.pages_compared);
            match &cmp.first_discrepancy {
                None => {
                    let _ = writeln!(o, "  verdict: pass");
                }
                Some((r, p, q, what)) => {
                    let _ = writeln!(o, "  verdict: FAIL at page {r} ({p},{q}): {what}");
                }
            }
        }
        let _ = writeln!(o, "\nverdict: {}", if self.passed() { "pass" } else { "FAIL" });
        o
    }
}

/// Default family arity: 6, or more if the degree bound needs it.
pub fn default_arity_max(deg_max: usize) -> usize {
    required_arity(deg_max).max(required_arity_twisting(deg_max)).max(5) + 1
}

pub fn run_pipeline(path: &Path, opts: &PipelineOptions) -> Result<PipelineReport> {
    let lb = load_bundle(path, opts.oracle.as_deref()).map_err(|e| e.in_stage("load"))?;
    run_loaded(&lb, opts)
}

/// Runs every stage on already-loaded inputs.
pub fn run_loaded(lb: &LoadedBundle, opts: &PipelineOptions) -> Result<PipelineReport> {
    let b = &lb.base;
    let deg_max = opts.deg_max.or(lb.bundle.deg_max).unwrap_or(b.dim() + 1);
    let arity_max = opts.arity_max.or(lb.bundle.arity_max).unwrap_or_else(|| default_arity_max(deg_max));
    let needed = required_arity(deg_max).max(required_arity_twisting(deg_max));
    if arity_max < needed.max(2) {
        return Err(Error::Input {
            file: lb.bundle.path.clone(),
            message: format!("arity_max {arity_max} is below the {needed} needed for deg_max {deg_max}"),
        });
    }
    let tie = opts.tie_break;

    let hd = HomologyData::compute_with(lb.group.complex(), tie).map_err(|e| e.in_stage("homology"))?;
    let ring = GradedRing::from_homology(&lb.group, &hd).map_err(|e| e.in_stage("homology"))?;
    let hd_f = HomologyData::compute_with(lb.fiber.complex(), tie).map_err(|e| e.in_stage("homology"))?;
    let hmod = GradedModule::from_homology(&ring, &lb.fiber, &hd, &hd_f).map_err(|e| e.in_stage("homology"))?;
    if let Some(k) = (1..=lb.bundle.connectivity).find(|&i| ring.basis().dim_in(i) > 0) {
        return Err(Error::Input {
            file: lb.bundle.path.clone(),
            message: format!("connectivity {} declared but H_{k}(G) ≠ 0", lb.bundle.connectivity),
        });
    }

    let tr = build_f(&lb.group, &hd, &ring, arity_max).map_err(|e| e.in_stage("transfer"))?;
    let mut certified = Vec::new();
    for (m, r) in twisting_residual(&ring, &tr.f) {
        if !r.is_zero() {
            return Err(Error::certification("transfer", format!("δf ≠ f⌣₁f at arity {m}")));
        }
        certified.push(m);
    }
    let mt = build_fbar(&lb.fiber, &hd, &hd_f, &ring, &hmod, &tr, arity_max).map_err(|e| e.in_stage("transfer"))?;
    for (m, r) in module_residual(&ring, &hmod, &tr.f, &mt.fb) {
        if !r.is_zero() {
            return Err(Error::certification("transfer", format!("fbar compatibility fails at arity {m}")));
        }
    }

    let seeds = seeds(lb, &hd).map_err(|e| e.in_stage("h0"))?;
    let h0 = match solve_h0(b, &ring, &tr.f, &seeds, deg_max, tie).map_err(|e| e.in_stage("h0"))? {
        SolveOutcome::Solved(h0) => h0,
        SolveOutcome::Obstructed { degree, .. } => return Err(Error::Obstruction { degree }.in_stage("h0")),
    };
    let h = alpha(b, &ring, &tr.f, &h0)?;
    let hbar = beta(b, &hmod, &h0, &mt.fb)?;

    let tc = TwistedComplex::new(b, hmod.basis(), &hbar, CapConvention::BackFace)?;
    let r_max = b.dim() + 2;
    let pages = ss_pages(tc.filtered(), r_max).map_err(|e| e.in_stage("spectral"))?;
    check_page_invariants(&pages)?;

    // h₀ can first be nonzero in degree connectivity + 2.
    let n = lb.bundle.connectivity + 2;
    let shih = (n >= 3).then(|| {
        let mut checks = shih_form(b, &ring, &h0, &h, n);
        for page in pages.iter().filter(|p| (2..n).contains(&p.r)) {
            checks.push(ShihCheck {
                r: page.r,
                assertion: format!("d_{} = 0", page.r),
                passed: page.differentials.values().all(|d| d.is_zero()),
            });
        }
        (n, checks)
    });

    let oracle = match &lb.oracle {
        Some((p, fc)) => {
            let op = oracle_ss(fc, r_max).map_err(|e| e.in_stage("oracle"))?;
            check_page_invariants(&op).map_err(|e| e.in_stage("oracle"))?;
            Some((file_label(p), compare_pages(&pages, &op, 2)))
        }
        None => None,
    };

    Ok(PipelineReport {
        bundle_name: file_label(&lb.bundle.path),
        input_hash: lb.input_hash.clone(),
        deg_max,
        arity_max,
        tie_break: tie,
        base: b.clone(),
        ring,
        fibre_homology: hmod,
        transfer: tr,
        module_transfer: mt,
        certified_arities: certified,
        h0,
        h,
        hbar,
        pages,
        shih,
        oracle,
    })
}
