//! Small builders for unit tests.

use std::collections::BTreeMap;

use crate::complexes::{ChainComplex, DGAlgebra, StructureConstants};
use crate::gf2::{BitVec, Matrix};

pub type Terms<'a> = &'a [&'a str];

fn complex(basis: &[(usize, &str)], d: &[(&str, Terms<'_>)]) -> (ChainComplex, BTreeMap<String, (usize, usize)>) {
    let top = basis.iter().map(|b| b.0).max().unwrap_or(0);
    let mut names = vec![Vec::new(); top + 1];
    let mut index = BTreeMap::new();
    for &(deg, name) in basis {
        index.insert(name.to_string(), (deg, names[deg].len()));
        names[deg].push(name.to_string());
    }
    let mut bd: Vec<Matrix> = (0..=top)
        .map(|n| Matrix::zeros(if n == 0 { 0 } else { names[n - 1].len() }, names[n].len()))
        .collect();
    for &(x, terms) in d {
        let (n, j) = index[x];
        for t in terms {
            let (m, i) = index[*t];
            assert_eq!(m + 1, n, "boundary of {x} has the wrong degree");
            bd[n].flip(i, j);
        }
    }
    (ChainComplex::new(names, bd).expect("test complex"), index)
}

fn constants(
    left: &BTreeMap<String, (usize, usize)>,
    right: &BTreeMap<String, (usize, usize)>,
    out: &ChainComplex,
    table: &[(&str, &str, Terms<'_>)],
) -> StructureConstants {
    let mut sc = StructureConstants::new();
    for &(a, b, terms) in table {
        let (p, i) = left[a];
        let (q, j) = right[b];
        let mut v = BitVec::zeros(out.dim(p + q));
        for t in terms {
            let (_, k) = out.lookup(t).expect("known product term");
            v.flip(k);
        }
        sc.insert(((p, i), (q, j)), v);
    }
    sc
}

pub fn dga(
    basis: &[(usize, &str)],
    unit: &str,
    d: &[(&str, Terms<'_>)],
    mul: &[(&str, &str, Terms<'_>)],
) -> DGAlgebra {
    let (c, index) = complex(basis, d);
    let sc = constants(&index, &index, &c, mul);
    DGAlgebra::new(c, index[unit].1, false, &sc).expect("test algebra")
}

/// The Massey model: `⟨a, b, c⟩` is defined and nonzero.
pub fn massey() -> DGAlgebra {
    dga(
        &[
            (0, "1"),
            (1, "a"),
            (1, "b"),
            (1, "c"),
            (2, "ab"),
            (2, "bc"),
            (3, "abc"),
            (3, "u"),
            (3, "v"),
            (4, "uc"),
            (4, "av"),
        ],
        "1",
        &[("u", &["ab"]), ("v", &["bc"]), ("uc", &["abc"]), ("av", &["abc"])],
        &[
            ("a", "b", &["ab"]),
            ("b", "c", &["bc"]),
            ("ab", "c", &["abc"]),
            ("a", "bc", &["abc"]),
            ("u", "c", &["uc"]),
            ("a", "v", &["av"]),
        ],
    )
}

/// `H_*(S¹)` as a formal algebra.
pub fn circle() -> DGAlgebra {
    dga(&[(0, "1"), (1, "e")], "1", &[], &[])
}
