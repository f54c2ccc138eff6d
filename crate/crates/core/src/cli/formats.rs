//! Line-oriented text formats for fixtures.
//!
//! `.dga` / `.dgm`:
//! ```text
//! # comment
//! truncated                 # optional, .dga only
//! basis <deg> <name>
//! unit <name>               # .dga only
//! d <name> = <name>+<name>+...      (or 0)
//! mul <a> <b> = <sum>       # .dga only
//! act <a> <x> = <sum>       # .dgm only; a from the group, x from the fibre
//! ```
//!
//! `.sset`:
//! ```text
//! simplex <dim> <name> faces <face_0> ... <face_dim>
//! ```
//! where a face is a simplex name or a formal degeneracy such as `s0(v)` or
//! `s1(s0(v))`. Vertices omit the `faces` clause.
//!
//! `.filt` (explicitly filtered complex):
//! ```text
//! cell <deg> <filtration> <name>
//! d <name> = <sum>
//! ```
//!
//! `.bundle`:
//! ```text
//! base <path.sset>
//! group <path.dga>
//! fiber <path.dgm> | point | group
//! connectivity <n-1>
//! deg_max <int>          # optional
//! arity_max <int>        # optional
//! oracle <path.filt>     # optional
//! seed <p> <simplex> = <cycle sum in C_{p-1}(G)>
//! ```

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use crate::base_cochains::{SimplicialSet, Simplex};
use crate::complexes::{ChainComplex, DGAlgebra, DGModule, StructureConstants};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Matrix};
use crate::spectral::FilteredComplex;

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
    rhs: Option<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            return None;
        }
        let (lhs, rhs) = match content.split_once('=') {
            Some((l, r)) => (l, Some(r.trim())),
            None => (content, None),
        };
        Some(Line {
            number: i + 1,
            words: lhs.split_whitespace().collect(),
            rhs,
        })
    })
}

fn parse_error(file: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn sum_terms(rhs: &str) -> Vec<&str> {
    if rhs == "0" {
        return Vec::new();
    }
    rhs.split('+').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Basis declarations shared by the chain-complex formats.
#[derive(Default)]
struct BasisTable {
    per_degree: Vec<Vec<String>>,
    index: HashMap<String, (usize, usize)>,
    decl_line: HashMap<String, usize>,
}

impl BasisTable {
    fn declare(&mut self, file: &Path, line: usize, deg: &str, name: &str) -> Result<()> {
        let deg: usize = deg
            .parse()
            .map_err(|_| parse_error(file, line, format!("bad degree `{deg}`")))?;
        if self.index.contains_key(name) {
            return Err(parse_error(file, line, format!("duplicate basis element `{name}`")));
        }
        if self.per_degree.len() <= deg {
            self.per_degree.resize(deg + 1, Vec::new());
        }
        self.index.insert(name.to_string(), (deg, self.per_degree[deg].len()));
        self.per_degree[deg].push(name.to_string());
        self.decl_line.insert(name.to_string(), line);
        Ok(())
    }

    fn dim(&self, n: usize) -> usize {
        self.per_degree.get(n).map_or(0, Vec::len)
    }

    fn lookup(&self, file: &Path, line: usize, name: &str) -> Result<(usize, usize)> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| parse_error(file, line, format!("unknown basis element `{name}`")))
    }

    /// A homogeneous sum of degree `deg`.
    fn sum(&self, file: &Path, line: usize, rhs: &str, deg: usize) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.dim(deg));
        for term in sum_terms(rhs) {
            let (d, i) = self.lookup(file, line, term)?;
            if d != deg {
                return Err(parse_error(
                    file,
                    line,
                    format!("`{term}` has degree {d}, expected {deg}"),
                ));
            }
            v.flip(i);
        }
        Ok(v)
    }

    /// Maps an axiom failure to the line declaring the first element it names.
    fn locate(&self, file: &Path, lines: &HashMap<String, usize>, err: Error) -> Error {
        let Error::Axiom { identity, detail } = err else {
            return err;
        };
        let line = detail
            .split(|c: char| c.is_whitespace() || "(),·=+∂_".contains(c))
            .find_map(|tok| lines.get(tok).or_else(|| self.decl_line.get(tok)))
            .copied()
            .unwrap_or(0);
        parse_error(file, line, format!("{identity} violated: {detail}"))
    }
}

fn boundary_matrices(basis: &BasisTable, d: &BTreeMap<(usize, usize), BitVec>) -> Vec<Matrix> {
    (0..basis.per_degree.len())
        .map(|n| {
            let rows = if n == 0 { 0 } else { basis.dim(n - 1) };
            let cols: Vec<BitVec> = (0..basis.dim(n))
                .map(|i| d.get(&(n, i)).cloned().unwrap_or_else(|| BitVec::zeros(rows)))
                .collect();
            Matrix::from_columns(rows, &cols)
        })
        .collect()
}

fn parse_d_line(
    file: &Path,
    line: &Line<'_>,
    basis: &BasisTable,
    d: &mut BTreeMap<(usize, usize), BitVec>,
    d_lines: &mut HashMap<String, usize>,
) -> Result<()> {
    let [_, name] = line.words[..] else {
        return Err(parse_error(file, line.number, "expected `d <name> = <sum>`"));
    };
    let rhs = line.rhs.ok_or_else(|| parse_error(file, line.number, "missing `=`"))?;
    let (deg, i) = basis.lookup(file, line.number, name)?;
    if deg == 0 {
        if !sum_terms(rhs).is_empty() {
            return Err(parse_error(file, line.number, "degree-0 elements have zero boundary"));
        }
        return Ok(());
    }
    let v = basis.sum(file, line.number, rhs, deg - 1)?;
    if d.insert((deg, i), v).is_some() {
        return Err(parse_error(file, line.number, format!("boundary of `{name}` given twice")));
    }
    d_lines.insert(name.to_string(), line.number);
    Ok(())
}

/// Parses a `.dga` document.
pub fn parse_dga(text: &str, file: &Path) -> Result<DGAlgebra> {
    let mut basis = BasisTable::default();
    let mut truncated = false;
    let mut unit_name = None;
    for line in lines(text) {
        match line.words.first().copied() {
            Some("basis") => {
                let [_, deg, name] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `basis <deg> <name>`"));
                };
                basis.declare(file, line.number, deg, name)?;
            }
            Some("truncated") => truncated = true,
            Some("unit") => {
                let [_, name] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `unit <name>`"));
                };
                unit_name = Some((line.number, name.to_string()));
            }
            Some("d" | "mul") => {}
            Some(other) => return Err(parse_error(file, line.number, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    let (unit_line, unit_name) = unit_name.ok_or_else(|| parse_error(file, 0, "missing `unit` line"))?;
    let (ud, unit) = basis.lookup(file, unit_line, &unit_name)?;
    if ud != 0 {
        return Err(parse_error(file, unit_line, "unit must have degree 0"));
    }

    let mut d = BTreeMap::new();
    let mut d_lines = HashMap::new();
    let mut products = StructureConstants::new();
    let mut mul_lines = HashMap::new();
    for line in lines(text) {
        match line.words.first().copied() {
            Some("d") => parse_d_line(file, &line, &basis, &mut d, &mut d_lines)?,
            Some("mul") => {
                let [_, a, b] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `mul <a> <b> = <sum>`"));
                };
                let rhs = line.rhs.ok_or_else(|| parse_error(file, line.number, "missing `=`"))?;
                let (p, i) = basis.lookup(file, line.number, a)?;
                let (q, j) = basis.lookup(file, line.number, b)?;
                let v = if p + q < basis.per_degree.len() {
                    basis.sum(file, line.number, rhs, p + q)?
                } else if sum_terms(rhs).is_empty() {
                    BitVec::zeros(0)
                } else {
                    return Err(parse_error(file, line.number, format!("{a}·{b} lands above the top degree")));
                };
                if products.insert(((p, i), (q, j)), v).is_some() {
                    return Err(parse_error(file, line.number, format!("product {a}·{b} given twice")));
                }
                mul_lines.insert(a.to_string(), line.number);
            }
            _ => {}
        }
    }
    let complex = ChainComplex::new(basis.per_degree.clone(), boundary_matrices(&basis, &d))
        .map_err(|e| basis.locate(file, &d_lines, e))?;
    DGAlgebra::new(complex, unit, truncated, &products).map_err(|e| basis.locate(file, &mul_lines, e))
}

/// Parses a `.dgm` document describing a module over `alg`.
pub fn parse_dgm(text: &str, file: &Path, alg: &DGAlgebra) -> Result<DGModule> {
    let mut basis = BasisTable::default();
    for line in lines(text) {
        match line.words.first().copied() {
            Some("basis") => {
                let [_, deg, name] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `basis <deg> <name>`"));
                };
                basis.declare(file, line.number, deg, name)?;
            }
            Some("d" | "act") => {}
            Some(other) => return Err(parse_error(file, line.number, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    let g = alg.complex();
    let mut d = BTreeMap::new();
    let mut d_lines = HashMap::new();
    let mut action = StructureConstants::new();
    let mut act_lines = HashMap::new();
    for line in lines(text) {
        match line.words.first().copied() {
            Some("d") => parse_d_line(file, &line, &basis, &mut d, &mut d_lines)?,
            Some("act") => {
                let [_, a, x] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `act <a> <x> = <sum>`"));
                };
                let rhs = line.rhs.ok_or_else(|| parse_error(file, line.number, "missing `=`"))?;
                let (p, i) = g
                    .lookup(a)
                    .ok_or_else(|| parse_error(file, line.number, format!("unknown group element `{a}`")))?;
                let (q, j) = basis.lookup(file, line.number, x)?;
                let v = if p + q < basis.per_degree.len() {
                    basis.sum(file, line.number, rhs, p + q)?
                } else if sum_terms(rhs).is_empty() {
                    BitVec::zeros(0)
                } else {
                    return Err(parse_error(file, line.number, format!("{a}·{x} lands above the top degree")));
                };
                if action.insert(((p, i), (q, j)), v).is_some() {
                    return Err(parse_error(file, line.number, format!("action {a}·{x} given twice")));
                }
                act_lines.insert(x.to_string(), line.number);
            }
            _ => {}
        }
    }
    let complex = ChainComplex::new(basis.per_degree.clone(), boundary_matrices(&basis, &d))
        .map_err(|e| basis.locate(file, &d_lines, e))?;
    DGModule::new(alg, complex, &action).map_err(|e| basis.locate(file, &act_lines, e))
}

/// Parses a face expression: a name or `s<j>(<face>)`.
fn parse_face(file: &Path, line: usize, expr: &str, known: &HashMap<String, (usize, usize)>) -> Result<Simplex> {
    let expr = expr.trim();
    if let Some(rest) = expr.strip_prefix('s') {
        if let Some(open) = rest.find('(') {
            if let Ok(j) = rest[..open].parse::<usize>() {
                let inner = rest[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| parse_error(file, line, format!("unbalanced degeneracy `{expr}`")))?;
                let s = parse_face(file, line, inner, known)?;
                if j > s.dim() {
                    return Err(parse_error(file, line, format!("degeneracy s{j} on a {}-simplex", s.dim())));
                }
                return Ok(s.degeneracy(j));
            }
        }
    }
    let &(dim, idx) = known
        .get(expr)
        .ok_or_else(|| parse_error(file, line, format!("unknown simplex `{expr}` (declare faces first)")))?;
    Ok(Simplex::nondegenerate(dim, idx))
}

/// Parses a `.sset` document. Faces must be declared before use.
pub fn parse_sset(text: &str, file: &Path) -> Result<SimplicialSet> {
    let mut set = SimplicialSet::new();
    let mut known = HashMap::new();
    let mut decl = HashMap::new();
    for line in lines(text) {
        if line.words.first() != Some(&"simplex") {
            return Err(parse_error(file, line.number, "expected `simplex <dim> <name> [faces ...]`"));
        }
        if line.words.len() < 3 {
            return Err(parse_error(file, line.number, "expected `simplex <dim> <name> [faces ...]`"));
        }
        let dim: usize = line.words[1]
            .parse()
            .map_err(|_| parse_error(file, line.number, "bad dimension"))?;
        let name = line.words[2];
        if known.contains_key(name) {
            return Err(parse_error(file, line.number, format!("duplicate simplex `{name}`")));
        }
        let faces: Vec<Simplex> = if dim == 0 {
            if line.words.len() > 3 && !(line.words.len() == 4 && line.words[3] == "faces") {
                return Err(parse_error(file, line.number, "vertices have no faces"));
            }
            Vec::new()
        } else {
            if line.words.get(3) != Some(&"faces") || line.words.len() != 4 + dim + 1 {
                return Err(parse_error(
                    file,
                    line.number,
                    format!("a {dim}-simplex needs `faces` followed by {} faces", dim + 1),
                ));
            }
            line.words[4..]
                .iter()
                .map(|w| parse_face(file, line.number, w, &known))
                .collect::<Result<_>>()?
        };
        for (i, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(parse_error(file, line.number, format!("face {i} has dimension {}", f.dim())));
            }
        }
        let idx = set.add(dim, name, faces);
        known.insert(name.to_string(), (dim, idx));
        decl.insert(name.to_string(), line.number);
    }
    set.check_identities().map_err(|e| match e {
        Error::Axiom { identity, detail } => {
            let line = detail
                .split_whitespace()
                .find_map(|t| decl.get(t.trim_matches(|c: char| !c.is_alphanumeric() && c != '_')))
                .copied()
                .unwrap_or(0);
            parse_error(file, line, format!("{identity} violated: {detail}"))
        }
        other => other,
    })?;
    Ok(set)
}

/// Parses a `.filt` document.
pub fn parse_filtered(text: &str, file: &Path) -> Result<FilteredComplex> {
    let mut basis = BasisTable::default();
    let mut filtration: HashMap<String, i64> = HashMap::new();
    for line in lines(text) {
        match line.words.first().copied() {
            Some("cell") => {
                let [_, deg, fil, name] = line.words[..] else {
                    return Err(parse_error(file, line.number, "expected `cell <deg> <filtration> <name>`"));
                };
                basis.declare(file, line.number, deg, name)?;
                let fil = fil
                    .parse()
                    .map_err(|_| parse_error(file, line.number, format!("bad filtration `{fil}`")))?;
                filtration.insert(name.to_string(), fil);
            }
            Some("d") => {}
            Some(other) => return Err(parse_error(file, line.number, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    let mut d = BTreeMap::new();
    let mut d_lines = HashMap::new();
    for line in lines(text) {
        if line.words.first() == Some(&"d") {
            parse_d_line(file, &line, &basis, &mut d, &mut d_lines)?;
        }
    }
    let complex = ChainComplex::new(basis.per_degree.clone(), boundary_matrices(&basis, &d))
        .map_err(|e| basis.locate(file, &d_lines, e))?;
    let fil: Vec<Vec<i64>> = basis
        .per_degree
        .iter()
        .map(|names| names.iter().map(|n| filtration[n]).collect())
        .collect();
    FilteredComplex::new(complex, fil).map_err(|e| basis.locate(file, &d_lines, e))
}

/// Where the fibre of a bundle comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSpec {
    Point,
    /// The group acting on itself.
    Group,
    File(PathBuf),
}

/// A parsed `.bundle` file.
#[derive(Clone, Debug)]
pub struct FixtureBundle {
    pub path: PathBuf,
    pub base: PathBuf,
    pub group: PathBuf,
    pub fiber: FiberSpec,
    pub oracle: Option<PathBuf>,
    /// Declared `n − 1` such that `H_i(G) = 0` for `0 < i < n`.
    pub connectivity: usize,
    pub deg_max: Option<usize>,
    pub arity_max: Option<usize>,
    /// `(p, simplex name, cycle terms, line)`.
    pub seeds: Vec<(usize, String, Vec<String>, usize)>,
}

pub fn parse_bundle(text: &str, file: &Path) -> Result<FixtureBundle> {
    let dir = file.parent().unwrap_or(Path::new("."));
    let mut base = None;
    let mut group = None;
    let mut fiber = FiberSpec::Point;
    let mut oracle = None;
    let mut connectivity = 0;
    let mut deg_max = None;
    let mut arity_max = None;
    let mut seeds = Vec::new();
    let int = |w: &str, line: usize| -> Result<usize> {
        w.parse().map_err(|_| parse_error(file, line, format!("expected an integer, found `{w}`")))
    };
    for line in lines(text) {
        let n = line.number;
        match line.words[..] {
            ["base", p] => base = Some(dir.join(p)),
            ["group", p] => group = Some(dir.join(p)),
            ["fiber", "point"] => fiber = FiberSpec::Point,
            ["fiber", "group"] => fiber = FiberSpec::Group,
            ["fiber", p] => fiber = FiberSpec::File(dir.join(p)),
            ["oracle", p] => oracle = Some(dir.join(p)),
            ["connectivity", k] => connectivity = int(k, n)?,
            ["deg_max", k] => deg_max = Some(int(k, n)?),
            ["arity_max", k] => arity_max = Some(int(k, n)?),
            ["seed", p, simplex] => {
                let rhs = line.rhs.ok_or_else(|| parse_error(file, n, "missing `=` in seed"))?;
                let p = int(p, n)?;
                if p < 2 {
                    return Err(parse_error(file, n, "seed components start in cochain degree 2"));
                }
                seeds.push((p, simplex.to_string(), sum_terms(rhs).into_iter().map(String::from).collect(), n));
            }
            _ => return Err(parse_error(file, n, format!("unrecognised line `{}`", line.words.join(" ")))),
        }
    }
    Ok(FixtureBundle {
        path: file.to_path_buf(),
        base: base.ok_or_else(|| parse_error(file, 0, "missing `base`"))?,
        group: group.ok_or_else(|| parse_error(file, 0, "missing `group`"))?,
        fiber,
        oracle,
        connectivity,
        deg_max,
        arity_max,
        seeds,
    })
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input {
        file: path.to_path_buf(),
        message: e.to_string(),
    })
}
