//! Randomized identity battery for the cochain calculus.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hochschild::{compose_at, cup, cup1, hdelta, module_delta, Cochain, GradedModule, GradedRing};

/// The `⌣₁` under test; swapped out to check that the battery catches errors.
pub type Cup1Fn = fn(&Cochain, &Cochain) -> Cochain;

/// `⌣₁` that forgets the last insertion slot.
pub fn cup1_off_by_one(f: &Cochain, g: &Cochain) -> Cochain {
    let mut out = compose_at(f, g, 0);
    for k in 1..f.arity() - 1 {
        out.add_assign(&compose_at(f, g, k));
    }
    out
}

/// Pass/fail counts per identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    /// `(identity, passed, failed)` in a fixed order.
    pub results: Vec<(&'static str, usize, usize)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.2 == 0)
    }

    pub fn failures(&self, identity: &str) -> usize {
        self.results.iter().find(|r| r.0 == identity).map_or(0, |r| r.2)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "property suite seed {} trials {}", self.seed, self.trials);
        for (name, pass, fail) in &self.results {
            let _ = writeln!(out, "  {name}: {pass} passed, {fail} failed");
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// Rings of dimension at most 8 used by the battery.
pub fn suite_rings() -> Vec<(&'static str, GradedRing)> {
    let exterior = GradedRing::monomial(&[("1", 0), ("x", 1), ("y", 1), ("xy", 2)], |a, b| match (a, b) {
        (0, k) | (k, 0) => Some(k),
        (1, 2) | (2, 1) => Some(3),
        _ => None,
    });
    let truncated = GradedRing::monomial(&[("1", 0), ("t", 1), ("t2", 2), ("t3", 3)], |a, b| {
        let d = a + b;
        (d <= 3).then_some(d)
    });
    let free = GradedRing::monomial(&[("1", 0), ("x", 1), ("y", 1), ("xy", 2), ("yx", 2)], |a, b| match (a, b) {
        (0, k) | (k, 0) => Some(k),
        (1, 2) => Some(3),
        (2, 1) => Some(4),
        _ => None,
    });
    let mixed = GradedRing::monomial(&[("1", 0), ("e1", 1), ("e3", 3), ("e1e3", 4)], |a, b| match (a, b) {
        (0, k) | (k, 0) => Some(k),
        (1, 2) | (2, 1) => Some(3),
        _ => None,
    });
    [
        ("exterior(x,y)", exterior),
        ("truncated t^4", truncated),
        ("free truncated <x,y>", free),
        ("exterior(e1,e3)", mixed),
    ]
    .into_iter()
    .map(|(n, r)| (n, r.expect("suite ring is valid")))
    .collect()
}

const IDENTITIES: [&str; 5] = [
    "δδ = 0",
    "Leibniz δ(f⌣g) = δf⌣g + f⌣δg",
    "Hirsch δ(f⌣₁g) = δf⌣₁g + f⌣₁δg + f⌣g + g⌣f",
    "module δδ = 0",
    "⌣₁ preserves homogeneity",
];

pub fn run_property_suite(seed: u64, trials: usize) -> SuiteReport {
    run_property_suite_with(seed, trials, cup1)
}

/// The battery with an injected `⌣₁`.
pub fn run_property_suite_with(seed: u64, trials: usize, cup1_impl: Cup1Fn) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = suite_rings();
    let mut counts = [(0usize, 0usize); IDENTITIES.len()];
    let mut record = |i: usize, ok: bool| {
        if ok {
            counts[i].0 += 1;
        } else {
            counts[i].1 += 1;
        }
    };
    for _ in 0..trials {
        let (_, ring) = &rings[rng.gen_range(0..rings.len())];
        let b = ring.basis();
        let (i, j) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let (df, dg) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let f = Cochain::random(&mut rng, &vec![b; i], b, df, 0.5);
        let g = Cochain::random(&mut rng, &vec![b; j], b, dg, 0.5);

        record(0, hdelta(ring, &hdelta(ring, &f)).is_zero());
        let leibniz = hdelta(ring, &cup(ring, &f, &g))
            .add(&cup(ring, &hdelta(ring, &f), &g))
            .add(&cup(ring, &f, &hdelta(ring, &g)));
        record(1, leibniz.is_zero());
        let hirsch = hdelta(ring, &cup1_impl(&f, &g))
            .add(&cup1_impl(&hdelta(ring, &f), &g))
            .add(&cup1_impl(&f, &hdelta(ring, &g)))
            .add(&cup(ring, &f, &g))
            .add(&cup(ring, &g, &f));
        record(2, hirsch.is_zero());

        let module = GradedModule::regular(ring);
        let fb = Cochain::random(&mut rng, &vec![b; i + 1], b, df, 0.5);
        record(3, module_delta(ring, &module, &module_delta(ring, &module, &fb)).is_zero());
        record(4, cup1_impl(&f, &g).is_homogeneous(&vec![b; i + j - 1], b));
    }
    SuiteReport {
        seed,
        trials,
        results: IDENTITIES.iter().zip(counts).map(|(n, (p, f))| (*n, p, f)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let r = run_property_suite(1, 0);
        assert!(r.passed());
        assert!(r.results.iter().all(|x| x.1 == 0 && x.2 == 0));
    }

    #[test]
    fn default_suite_passes_and_is_deterministic() {
        let a = run_property_suite(2024, 60);
        assert!(a.passed(), "{}", a.text());
        assert_eq!(a, run_property_suite(2024, 60));
    }

    #[test]
    fn mutant_fails_hirsch() {
        let r = run_property_suite_with(5, 60, cup1_off_by_one);
        assert!(r.failures(IDENTITIES[2]) > 0);
        assert_eq!(r.failures(IDENTITIES[0]), 0);
    }
}
