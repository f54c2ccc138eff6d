//! Finite chain complexes, DG-algebras and DG-modules over GF(2), and their
//! homology with an explicit cycle-choosing section and contraction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis_with, quotient_basis_with, rref_with, BitVec, EchelonBasis, Matrix, Reducer, TieBreak};
use crate::graded::GradedBasis;

/// A homogeneous chain: coordinates in the basis of `C_degree`.
///
/// Degrees above the top of a complex are legal and carry an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub degree: usize,
    pub coords: BitVec,
}

impl Chain {
    pub fn new(degree: usize, coords: BitVec) -> Self {
        Chain { degree, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add_assign(&mut self, other: &Chain) {
        assert_eq!(self.degree, other.degree, "adding chains of different degree");
        self.coords.add_assign(&other.coords);
    }
}

/// A bounded chain complex `C_0 ← C_1 ← … ← C_D` with named basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    names: Vec<Vec<String>>,
    /// `boundary[n]` maps `C_n → C_{n-1}`; `boundary[0]` has no rows.
    boundary: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds a complex and checks `∂∂ = 0`.
    pub fn new(names: Vec<Vec<String>>, boundary: Vec<Matrix>) -> Result<Self> {
        if names.len() != boundary.len() {
            return Err(Error::axiom("boundary shape", "one boundary matrix per degree is required"));
        }
        for (n, m) in boundary.iter().enumerate() {
            let rows = if n == 0 { 0 } else { names[n - 1].len() };
            if m.rows() != rows || m.cols() != names[n].len() {
                return Err(Error::axiom(
                    "boundary shape",
                    format!("∂_{n} is {}x{}, expected {rows}x{}", m.rows(), m.cols(), names[n].len()),
                ));
            }
        }
        for n in 2..boundary.len() {
            let dd = boundary[n - 1].mul(&boundary[n]);
            if let Some(j) = (0..dd.cols()).find(|&j| !dd.column(j).is_zero()) {
                return Err(Error::axiom(
                    "∂∂ = 0",
                    format!("∂_{}∂_{n}({}) ≠ 0", n - 1, names[n][j]),
                ));
            }
        }
        Ok(ChainComplex { names, boundary })
    }

    /// The complex with zero differential on the given basis.
    pub fn with_zero_differential(names: Vec<Vec<String>>) -> Self {
        let boundary = (0..names.len())
            .map(|n| Matrix::zeros(if n == 0 { 0 } else { names[n - 1].len() }, names[n].len()))
            .collect();
        ChainComplex { names, boundary }
    }

    pub fn top_degree(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn num_degrees(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.names.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        self.names
            .iter()
            .enumerate()
            .find_map(|(n, names)| names.iter().position(|x| x == name).map(|i| (n, i)))
    }

    /// `∂_n : C_n → C_{n-1}` (no rows when `n = 0`).
    pub fn boundary(&self, n: usize) -> Matrix {
        match self.boundary.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n.saturating_sub(1)), 0),
        }
    }

    pub fn zero(&self, n: usize) -> Chain {
        Chain::new(n, BitVec::zeros(self.dim(n)))
    }

    pub fn basis_chain(&self, n: usize, i: usize) -> Chain {
        Chain::new(n, BitVec::unit(self.dim(n), i))
    }

    /// `∂z`, or `None` for degree-0 chains.
    pub fn apply_boundary(&self, z: &Chain) -> Option<Chain> {
        if z.degree == 0 {
            return None;
        }
        if z.degree > self.top_degree() {
            return Some(self.zero(z.degree - 1));
        }
        Some(Chain::new(z.degree - 1, self.boundary[z.degree].apply(&z.coords)))
    }

    pub fn is_cycle(&self, z: &Chain) -> bool {
        self.apply_boundary(z).is_none_or(|b| b.is_zero())
    }

    pub fn format(&self, z: &Chain) -> String {
        if z.is_zero() {
            return "0".into();
        }
        z.coords.ones().map(|i| self.names[z.degree][i].as_str()).collect::<Vec<_>>().join("+")
    }
}

/// Bilinear structure constants `C_p ⊗ C_q → C_{p+q}`, stored densely per
/// degree pair.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Pairing {
    /// `table[p][q][i * dim_right(q) + j]`
    table: Vec<Vec<Vec<BitVec>>>,
}

impl Pairing {
    fn build(
        left: &ChainComplex,
        right: &ChainComplex,
        target: &ChainComplex,
        mut value: impl FnMut((usize, usize), (usize, usize)) -> Option<BitVec>,
    ) -> Self {
        let table = (0..left.num_degrees())
            .map(|p| {
                (0..right.num_degrees())
                    .map(|q| {
                        let mut cells = Vec::with_capacity(left.dim(p) * right.dim(q));
                        for i in 0..left.dim(p) {
                            for j in 0..right.dim(q) {
                                cells.push(value((p, i), (q, j)).unwrap_or_else(|| BitVec::zeros(target.dim(p + q))));
                            }
                        }
                        cells
                    })
                    .collect()
            })
            .collect();
        Pairing { table }
    }

    fn basis(&self, right: &ChainComplex, (p, i): (usize, usize), (q, j): (usize, usize)) -> &BitVec {
        &self.table[p][q][i * right.dim(q) + j]
    }

    fn apply(&self, right: &ChainComplex, target: &ChainComplex, x: &Chain, y: &Chain) -> Chain {
        let n = x.degree + y.degree;
        let mut out = target.zero(n);
        if x.degree >= self.table.len() || y.degree >= right.num_degrees() {
            return out;
        }
        for i in x.coords.ones() {
            for j in y.coords.ones() {
                out.coords.add_assign(self.basis(right, (x.degree, i), (y.degree, j)));
            }
        }
        out
    }
}

/// Declared products, keyed by `((p, i), (q, j))` basis positions.
pub type StructureConstants = BTreeMap<((usize, usize), (usize, usize)), BitVec>;

/// A finite DG-algebra. The unit is a degree-0 basis element; products with
/// it are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGAlgebra {
    complex: ChainComplex,
    unit: usize,
    truncated: bool,
    product: Pairing,
}

impl DGAlgebra {
    /// Builds the algebra and verifies unit, associativity and Leibniz on
    /// all basis pairs and triples. Undeclared products are zero.
    ///
    /// With `truncated` set, products whose degree exceeds the top degree are
    /// dropped and identities are only required where nothing was dropped.
    pub fn new(complex: ChainComplex, unit: usize, truncated: bool, declared: &StructureConstants) -> Result<Self> {
        if unit >= complex.dim(0) {
            return Err(Error::axiom("unit", "unit must be a degree-0 basis element"));
        }
        let top = complex.top_degree();
        for (&((p, i), (q, j)), v) in declared {
            if p + q > top && !v.is_zero() {
                return Err(Error::axiom(
                    "closure",
                    format!("{}·{} lands above degree {top}", complex.names(p)[i], complex.names(q)[j]),
                ));
            }
            if (p == 0 && i == unit) || (q == 0 && j == unit) {
                let other = if p == 0 && i == unit { (q, j) } else { (p, i) };
                if *v != BitVec::unit(complex.dim(other.0), other.1) {
                    return Err(Error::axiom("unit", "declared product with the unit disagrees with identity"));
                }
            }
        }
        let product = Pairing::build(&complex, &complex, &complex, |(p, i), (q, j)| {
            if p == 0 && i == unit {
                Some(BitVec::unit(complex.dim(q), j))
            } else if q == 0 && j == unit {
                Some(BitVec::unit(complex.dim(p), i))
            } else {
                declared.get(&((p, i), (q, j))).cloned()
            }
        });
        let alg = DGAlgebra {
            complex,
            unit,
            truncated,
            product,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn unit(&self) -> Chain {
        self.complex.basis_chain(0, self.unit)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mul(&self, x: &Chain, y: &Chain) -> Chain {
        self.product.apply(&self.complex, &self.complex, x, y)
    }

    fn basis_elements(&self) -> Vec<Chain> {
        (0..self.complex.num_degrees())
            .flat_map(|n| (0..self.complex.dim(n)).map(move |i| (n, i)))
            .map(|(n, i)| self.complex.basis_chain(n, i))
            .collect()
    }

    fn fits(&self, deg: usize) -> bool {
        !self.truncated || deg <= self.complex.top_degree()
    }

    fn check_axioms(&self) -> Result<()> {
        let c = &self.complex;
        let basis = self.basis_elements();
        for x in &basis {
            for y in &basis {
                if !self.fits(x.degree + y.degree) {
                    continue;
                }
                let xy = self.mul(x, y);
                let lhs = c.apply_boundary(&xy);
                let mut rhs = c.zero((x.degree + y.degree).saturating_sub(1));
                if let Some(dx) = c.apply_boundary(x) {
                    rhs.add_assign(&self.mul(&dx, y));
                }
                if let Some(dy) = c.apply_boundary(y) {
                    rhs.add_assign(&self.mul(x, &dy));
                }
                if let Some(lhs) = lhs {
                    if lhs != rhs {
                        return Err(Error::axiom(
                            "Leibniz ∂(xy) = ∂x·y + x·∂y",
                            format!("x = {}, y = {}", c.format(x), c.format(y)),
                        ));
                    }
                }
                for z in &basis {
                    if !self.fits(x.degree + y.degree + z.degree) {
                        continue;
                    }
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return Err(Error::axiom(
                            "associativity",
                            format!("({}·{})·{}", c.format(x), c.format(y), c.format(z)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite DG-module over a [`DGAlgebra`], i.e. a chain-level action
/// `C_p(G) ⊗ C_q(F) → C_{p+q}(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGModule {
    complex: ChainComplex,
    action: Pairing,
}

impl DGModule {
    /// Builds the module and verifies unit, associativity `(ab)x = a(bx)` and
    /// Leibniz on all basis elements. The algebra unit acts as the identity
    /// implicitly; every other undeclared action is zero.
    pub fn new(alg: &DGAlgebra, complex: ChainComplex, declared: &StructureConstants) -> Result<Self> {
        let g = alg.complex();
        let top = complex.top_degree();
        for (&((p, i), (q, j)), v) in declared {
            if p + q > top && !v.is_zero() {
                return Err(Error::axiom(
                    "closure",
                    format!("{}·{} lands above degree {top}", g.names(p)[i], complex.names(q)[j]),
                ));
            }
            if p == 0 && i == alg.unit && *v != BitVec::unit(complex.dim(q), j) {
                return Err(Error::axiom("unit", "declared unit action disagrees with identity"));
            }
        }
        let action = Pairing::build(g, &complex, &complex, |(p, i), (q, j)| {
            if p == 0 && i == alg.unit {
                Some(BitVec::unit(complex.dim(q), j))
            } else {
                declared.get(&((p, i), (q, j))).cloned()
            }
        });
        let module = DGModule { complex, action };
        module.check_axioms(alg)?;
        Ok(module)
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(alg: &DGAlgebra) -> Self {
        DGModule {
            complex: alg.complex.clone(),
            action: alg.product.clone(),
        }
    }

    /// The one-point fibre: `C_*(F) = GF(2)` in degree 0, acted on through
    /// the augmentation (only the unit acts nontrivially).
    pub fn point(alg: &DGAlgebra) -> Self {
        let complex = ChainComplex::with_zero_differential(vec![vec!["pt".into()]]);
        let action = Pairing::build(alg.complex(), &complex, &complex, |(p, i), _| {
            (p == 0 && i == alg.unit).then(|| BitVec::unit(1, 0))
        });
        DGModule { complex, action }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn act(&self, a: &Chain, x: &Chain) -> Chain {
        self.action.apply(&self.complex, &self.complex, a, x)
    }

    fn check_axioms(&self, alg: &DGAlgebra) -> Result<()> {
        let g = alg.complex();
        let f = &self.complex;
        let gb = alg.basis_elements();
        let fb: Vec<Chain> = (0..f.num_degrees())
            .flat_map(|n| (0..f.dim(n)).map(move |i| (n, i)))
            .map(|(n, i)| f.basis_chain(n, i))
            .collect();
        let fits = |deg: usize| !alg.truncated || deg <= f.top_degree();
        for a in &gb {
            for x in &fb {
                if !fits(a.degree + x.degree) {
                    continue;
                }
                let ax = self.act(a, x);
                if let Some(lhs) = f.apply_boundary(&ax) {
                    let mut rhs = f.zero(lhs.degree);
                    if let Some(da) = g.apply_boundary(a) {
                        rhs.add_assign(&self.act(&da, x));
                    }
                    if let Some(dx) = f.apply_boundary(x) {
                        rhs.add_assign(&self.act(a, &dx));
                    }
                    if lhs != rhs {
                        return Err(Error::axiom(
                            "Leibniz ∂(a·x) = ∂a·x + a·∂x",
                            format!("a = {}, x = {}", g.format(a), f.format(x)),
                        ));
                    }
                }
                for b in &gb {
                    if !fits(a.degree + b.degree + x.degree) {
                        continue;
                    }
                    if self.act(&alg.mul(a, b), x) != self.act(a, &self.act(b, x)) {
                        return Err(Error::axiom(
                            "module associativity",
                            format!("({}·{})·{}", g.format(a), g.format(b), f.format(x)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct DegreeHomology {
    cycles: EchelonBasis,
    boundaries: EchelonBasis,
    reps: Vec<BitVec>,
    /// Generators: boundary basis first, then the representatives.
    classes: Reducer,
    /// Canonical preimage in `C_{n+1}` of each boundary basis vector.
    preimages: Vec<BitVec>,
}

/// Homology of a [`ChainComplex`] together with the chosen section `g`, the
/// class map `cl` and the contraction `∂⁻¹` on boundaries.
#[derive(Clone, Debug)]
pub struct HomologyData {
    complex: ChainComplex,
    degrees: Vec<DegreeHomology>,
    basis: GradedBasis,
    tie: TieBreak,
}

impl HomologyData {
    pub fn compute(c: &ChainComplex) -> Result<Self> {
        Self::compute_with(c, TieBreak::Canonical)
    }

    pub fn compute_with(c: &ChainComplex, tie: TieBreak) -> Result<Self> {
        let mut degrees = Vec::with_capacity(c.num_degrees());
        for n in 0..c.num_degrees() {
            let cycles = kernel_basis_with(&c.boundary(n), tie);
            let up = c.boundary(n + 1);
            let boundaries = rref_with(&up.transpose(), tie).0;
            let reps = quotient_basis_with(&boundaries, &cycles, tie).map_err(|_| {
                Error::axiom("∂∂ = 0", format!("boundaries in degree {n} are not cycles"))
            })?;
            let mut classes = Reducer::new(c.dim(n));
            for v in boundaries.vectors().iter().chain(&reps) {
                classes.insert(v);
            }
            let preimages = boundaries
                .vectors()
                .iter()
                .map(|b| {
                    crate::gf2::solve_with(&up, b, tie)?
                        .ok_or_else(|| Error::certification("homology", "boundary without preimage"))
                })
                .collect::<Result<Vec<_>>>()?;
            degrees.push(DegreeHomology {
                cycles,
                boundaries,
                reps,
                classes,
                preimages,
            });
        }
        let labels = degrees
            .iter()
            .enumerate()
            .map(|(n, d)| {
                d.reps
                    .iter()
                    .map(|r| format!("[{}]", c.format(&Chain::new(n, r.clone()))))
                    .collect()
            })
            .collect();
        Ok(HomologyData {
            complex: c.clone(),
            degrees,
            basis: GradedBasis::from_degrees(labels),
            tie,
        })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie
    }

    /// Flattened basis of `H_*`, labelled by representative cycles.
    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.reps.len())
    }

    pub fn cycles(&self, n: usize) -> &EchelonBasis {
        &self.degrees[n].cycles
    }

    pub fn boundaries(&self, n: usize) -> &EchelonBasis {
        &self.degrees[n].boundaries
    }

    /// The chosen cycle representing flat homology basis element `k`.
    pub fn g_basis(&self, k: usize) -> Chain {
        let (n, j) = self.basis.local(k);
        Chain::new(n, self.degrees[n].reps[j].clone())
    }

    /// `g` applied to a homogeneous flat homology vector of degree `n`.
    pub fn g(&self, n: usize, class: &BitVec) -> Chain {
        let mut out = self.complex.zero(n);
        for k in class.ones() {
            let (m, j) = self.basis.local(k);
            debug_assert_eq!(m, n, "g applied to inhomogeneous class");
            out.coords.add_assign(&self.degrees[n].reps[j]);
        }
        out
    }

    /// Matrix of `g : H_n → C_n`.
    pub fn g_matrix(&self, n: usize) -> Matrix {
        Matrix::from_columns(self.complex.dim(n), &self.degrees[n].reps)
    }

    /// Homology class of a cycle, as a flat vector over [`basis`](Self::basis).
    pub fn cl(&self, z: &Chain) -> Result<BitVec> {
        let n = z.degree;
        if n >= self.degrees.len() {
            return Ok(BitVec::zeros(self.basis.dim()));
        }
        if !self.complex.is_cycle(z) {
            return Err(Error::NotACycle { degree: n });
        }
        let d = &self.degrees[n];
        let combo = d.classes.decompose(&z.coords).ok_or(Error::NotACycle { degree: n })?;
        let nb = d.boundaries.dim();
        let local = BitVec::from_indices(d.reps.len(), combo.ones().filter(|&i| i >= nb).map(|i| i - nb));
        Ok(self.basis.embed(n, &local))
    }

    /// Canonical preimage under `∂` of a boundary in degree `n`, lying in degree `n + 1`.
    pub fn dinv(&self, b: &Chain) -> Result<Chain> {
        let n = b.degree;
        let mut out = self.complex.zero(n + 1);
        if b.is_zero() {
            return Ok(out);
        }
        let d = self.degrees.get(n).ok_or(Error::NotABoundary { degree: n })?;
        let coords = d.boundaries.coordinates(&b.coords).ok_or(Error::NotABoundary { degree: n })?;
        for k in coords.ones() {
            out.coords.add_assign(&d.preimages[k]);
        }
        Ok(out)
    }

    /// `∂⁻¹(z − g(cl z))`: raises degree by one.
    pub fn correction(&self, z: &Chain) -> Result<Chain> {
        let class = self.cl(z)?;
        let mut w = z.clone();
        if z.degree < self.degrees.len() {
            w.add_assign(&self.g(z.degree, &class));
        }
        self.dinv(&w)
    }
}

/// `φ(z) = ∂⁻¹(z − g(cl z))` on the structure group's chains.
pub fn phi(hd: &HomologyData, z: &Chain) -> Result<Chain> {
    hd.correction(z)
}

/// `ψ(z) = ∂⁻¹(z − ḡ(cl z))` on the fibre's chains.
pub fn psi(hd_fibre: &HomologyData, z: &Chain) -> Result<Chain> {
    hd_fibre.correction(z)
}
