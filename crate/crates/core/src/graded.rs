//! Finite graded algebras given by structure constants, graded linear maps,
//! and the covering that turns a ℤ_N-graded algebra into an ℕ-graded one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LinearMap, SparseVec};
use crate::scalar::{QMode, Scalar};

/// A vector in some finite basis; zero coefficients are never stored.
pub type Element = SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Nat,
    ModN(u32),
}

impl Grading {
    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("nat") {
            return Ok(Grading::Nat);
        }
        let n = t
            .strip_prefix("mod")
            .and_then(|r| r.trim().parse::<u32>().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("invalid grading `{s}`")))?;
        Ok(Grading::ModN(n))
    }

    fn render(&self) -> String {
        match self {
            Grading::Nat => "nat".into(),
            Grading::ModN(n) => format!("mod {n}"),
        }
    }
}

/// An ℕ-graded algebra that is finite up to a top degree. Products landing
/// above the top degree are zero, which is the quotient by an ideal and so
/// stays associative.
///
/// Elements are addressed degree-locally: `(degree, index within degree)`.
pub trait TruncatedAlgebra: Sync {
    fn mode(&self) -> QMode;
    fn top_degree(&self) -> usize;
    /// Dimension of the degree-`degree` component (0 above the top).
    fn dim(&self, degree: usize) -> usize;
    /// Product of two basis elements, in local coordinates of degree `da + db`.
    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element;
    /// The unit, in local coordinates of degree 0.
    fn unit(&self) -> Option<Element>;

    fn basis_label(&self, degree: usize, index: usize) -> String {
        format!("b{degree}_{index}")
    }

    /// Rejects presentations whose grading is not over ℕ.
    fn check_nat_graded(&self) -> Result<()> {
        Ok(())
    }

    fn mul(&self, da: usize, x: &Element, db: usize, y: &Element) -> Element {
        let mut out = Element::new();
        if da + db > self.top_degree() {
            return out;
        }
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.mul_basis(da, i, db, j);
                if !p.is_zero() {
                    out.add_scaled(&(a * b), &p);
                }
            }
        }
        out
    }

    fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|n| self.dim(n)).collect()
    }
}

impl<T: TruncatedAlgebra + ?Sized> TruncatedAlgebra for &T {
    fn mode(&self) -> QMode {
        (**self).mode()
    }
    fn top_degree(&self) -> usize {
        (**self).top_degree()
    }
    fn dim(&self, degree: usize) -> usize {
        (**self).dim(degree)
    }
    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element {
        (**self).mul_basis(da, a, db, b)
    }
    fn unit(&self) -> Option<Element> {
        (**self).unit()
    }
    fn basis_label(&self, degree: usize, index: usize) -> String {
        (**self).basis_label(degree, index)
    }
    fn check_nat_graded(&self) -> Result<()> {
        (**self).check_nat_graded()
    }
}

/// Raw fields of a presentation, with scalars already in a fixed mode.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub mode: QMode,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    pub grading: Grading,
    /// `(i, j) ↦ b_i b_j`; absent pairs multiply to zero.
    pub products: BTreeMap<(usize, usize), Element>,
    pub unit: Option<Element>,
    /// Top degree for ℕ-graded presentations; defaults to the largest basis degree.
    pub top_degree: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    mode: QMode,
    labels: Vec<String>,
    degrees: Vec<u32>,
    grading: Grading,
    products: BTreeMap<(usize, usize), Element>,
    unit: Option<Element>,
    top: usize,
    by_degree: Vec<Vec<usize>>,
    local: Vec<usize>,
}

/// Validates a presentation exhaustively: grading on every basis pair, the
/// unit on every basis element, and associativity on every basis triple.
pub fn make_algebra(data: AlgebraData) -> Result<GradedAlgebra> {
    let a = GradedAlgebra::from_data_unchecked(data)?;
    a.validate()?;
    Ok(a)
}

impl GradedAlgebra {
    /// Builds without the law checks (shape checks still apply). Used for
    /// algebras derived from already validated ones.
    pub fn from_data_unchecked(data: AlgebraData) -> Result<Self> {
        let dim = data.labels.len();
        if data.degrees.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} basis labels but {} degrees",
                dim,
                data.degrees.len()
            )));
        }
        let check_vec = |v: &Element, what: &str| -> Result<()> {
            if v.max_index().is_some_and(|m| m >= dim) {
                return Err(Error::DimensionMismatch(format!("{what} refers to a basis index >= {dim}")));
            }
            if v.iter().any(|(_, c)| c.mode() != data.mode) {
                return Err(Error::Domain(format!("{what} has scalars outside mode {}", data.mode)));
            }
            Ok(())
        };
        for (&(i, j), v) in &data.products {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch(format!("product ({i}, {j}) out of range")));
            }
            check_vec(v, "product")?;
        }
        if let Some(u) = &data.unit {
            check_vec(u, "unit")?;
        }
        let (top, classes) = match data.grading {
            Grading::Nat => {
                let max = data.degrees.iter().copied().max().unwrap_or(0) as usize;
                let top = data.top_degree.unwrap_or(max);
                if top < max {
                    return Err(Error::Domain(format!("top degree {top} below basis degree {max}")));
                }
                (top, top + 1)
            }
            Grading::ModN(n) => {
                if let Some(&d) = data.degrees.iter().find(|&&d| d >= n) {
                    return Err(Error::Domain(format!("degree {d} is not a residue mod {n}")));
                }
                (n as usize - 1, n as usize)
            }
        };
        let mut by_degree = vec![Vec::new(); classes];
        let mut local = vec![0; dim];
        for (g, &d) in data.degrees.iter().enumerate() {
            local[g] = by_degree[d as usize].len();
            by_degree[d as usize].push(g);
        }
        let products = data.products.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(GradedAlgebra {
            mode: data.mode,
            labels: data.labels,
            degrees: data.degrees,
            grading: data.grading,
            products,
            unit: data.unit,
            top,
            by_degree,
            local,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.dim_total();
        for i in 0..dim {
            for j in 0..dim {
                let want = self.sum_degree(self.degrees[i], self.degrees[j]);
                if let Some(p) = self.products.get(&(i, j)) {
                    if p.indices().any(|k| Some(self.degrees[k]) != want) {
                        return Err(Error::GradingViolation(i, j));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            if u.indices().any(|k| self.degrees[k] != 0) {
                return Err(Error::UnitViolation(u.indices().find(|&k| self.degrees[k] != 0).unwrap()));
            }
            for i in 0..dim {
                let b = Element::basis(i, self.mode);
                if self.mul(u, &b) != b || self.mul(&b, u) != b {
                    return Err(Error::UnitViolation(i));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.mul(&ij, &Element::basis(k, self.mode));
                    let jk = self.basis_product(j, k);
                    let right = self.mul(&Element::basis(i, self.mode), &jk);
                    if left != right {
                        return Err(Error::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn sum_degree(&self, a: u32, b: u32) -> Option<u32> {
        match self.grading {
            Grading::Nat => {
                let s = a + b;
                (s as usize <= self.top).then_some(s)
            }
            Grading::ModN(n) => Some((a + b) % n),
        }
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dim_total(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    /// Global indices of the basis elements in a degree (or residue class).
    pub fn basis_of_degree(&self, degree: usize) -> &[usize] {
        self.by_degree.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn local_index(&self, global: usize) -> usize {
        self.local[global]
    }

    pub fn unit_element(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Product in global coordinates.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(p) = self.products.get(&(i, j)) {
                    out.add_scaled(&(a * b), p);
                }
            }
        }
        out
    }

    pub fn power(&self, x: &Element, n: u32) -> Result<Element> {
        let mut acc = self
            .unit
            .clone()
            .ok_or_else(|| Error::Domain("power of an element in a non-unital algebra".into()))?;
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        Ok(acc)
    }

    /// Degree of a nonzero element if every term shares it.
    pub fn homogeneous_degree(&self, x: &Element) -> Option<u32> {
        let mut it = x.indices().map(|k| self.degrees[k]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn to_local(&self, degree: usize, x: &Element) -> Result<Element> {
        let mut out = Element::new();
        for (g, c) in x.iter() {
            if self.degrees[g] as usize != degree {
                return Err(Error::NonHomogeneous(format!("basis element {g} is not in degree {degree}")));
            }
            out.add_term(self.local[g], c);
        }
        Ok(out)
    }

    pub fn from_local(&self, degree: usize, x: &Element) -> Element {
        x.map_indices(|i| self.by_degree[degree][i])
    }

    pub fn to_file(&self) -> AlgebraFile {
        let render = |v: &Element| -> BTreeMap<String, String> {
            v.iter().map(|(k, c)| (k.to_string(), c.to_string())).collect()
        };
        AlgebraFile {
            basis: self.labels.clone(),
            degrees: self.degrees.clone(),
            grading: self.grading.render(),
            unit: self.unit.as_ref().map(render),
            products: self.products.iter().map(|(&(i, j), v)| (i, j, render(v))).collect(),
            top_degree: match self.grading {
                Grading::Nat => Some(self.top),
                Grading::ModN(_) => None,
            },
        }
    }
}

impl TruncatedAlgebra for GradedAlgebra {
    fn mode(&self) -> QMode {
        self.mode
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn dim(&self, degree: usize) -> usize {
        self.basis_of_degree(degree).len()
    }

    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element {
        if da + db > self.top {
            return Element::new();
        }
        let (i, j) = (self.by_degree[da][a], self.by_degree[db][b]);
        match self.products.get(&(i, j)) {
            Some(p) => p.map_indices(|g| self.local[g]),
            None => Element::new(),
        }
    }

    fn unit(&self) -> Option<Element> {
        self.unit.as_ref().map(|u| u.map_indices(|g| self.local[g]))
    }

    fn basis_label(&self, degree: usize, index: usize) -> String {
        self.labels[self.by_degree[degree][index]].clone()
    }

    fn check_nat_graded(&self) -> Result<()> {
        match self.grading {
            Grading::Nat => Ok(()),
            Grading::ModN(n) => Err(Error::Domain(format!(
                "algebra is Z_{n}-graded; take its covering first"
            ))),
        }
    }
}

/// The JSON presentation format: scalars are exact strings, sparse vectors
/// are `{ "index": "scalar" }` maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    pub grading: String,
    #[serde(default)]
    pub unit: Option<BTreeMap<String, String>>,
    pub products: Vec<(usize, usize, BTreeMap<String, String>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<usize>,
}

/// Parses a `{ "index": "scalar" }` map.
pub fn parse_sparse(map: &BTreeMap<String, String>, mode: QMode) -> Result<Element> {
    let mut v = Element::new();
    for (k, s) in map {
        let i: usize = k.trim().parse().map_err(|_| Error::Parse(format!("invalid basis index `{k}`")))?;
        v.add_term(i, &Scalar::parse_in(s, mode)?);
    }
    Ok(v)
}

impl AlgebraFile {
    pub fn to_data(&self, mode: QMode) -> Result<AlgebraData> {
        let mut products: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (i, j, v) in &self.products {
            let e = parse_sparse(v, mode)?;
            products.entry((*i, *j)).or_default().add_scaled(&Scalar::one(mode), &e);
        }
        Ok(AlgebraData {
            mode,
            labels: self.basis.clone(),
            degrees: self.degrees.clone(),
            grading: Grading::parse(&self.grading)?,
            products,
            unit: self.unit.as_ref().map(|u| parse_sparse(u, mode)).transpose()?,
            top_degree: self.top_degree,
        })
    }

    pub fn build(&self, mode: QMode) -> Result<GradedAlgebra> {
        make_algebra(self.to_data(mode)?)
    }
}

/// A homogeneous linear endomorphism of degree one on a truncated graded
/// space: `blocks[n]` maps degree `n` to degree `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOneMap {
    blocks: Vec<LinearMap>,
}

impl DegreeOneMap {
    /// Blocks must chain: the target of block `n` is the source of block `n + 1`.
    pub fn new(blocks: Vec<LinearMap>) -> Result<Self> {
        for (n, w) in blocks.windows(2).enumerate() {
            if w[0].target_dim() != w[1].source_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "block {n} targets dimension {} but block {} starts from {}",
                    w[0].target_dim(),
                    n + 1,
                    w[1].source_dim()
                )));
            }
        }
        Ok(DegreeOneMap { blocks })
    }

    pub fn zero(dims: &[usize]) -> Self {
        let blocks = dims.windows(2).map(|w| LinearMap::zero(w[0], w[1])).collect();
        DegreeOneMap { blocks }
    }

    /// Builds from the image of each basis element for an algebra's dims,
    /// covering source degrees `0..top`.
    pub fn from_fn(dims: &[usize], mut f: impl FnMut(usize, usize) -> Element) -> Self {
        let blocks = dims
            .windows(2)
            .enumerate()
            .map(|(n, w)| LinearMap::new(w[1], (0..w[0]).map(|i| f(n, i)).collect()))
            .collect();
        DegreeOneMap { blocks }
    }

    pub fn blocks(&self) -> &[LinearMap] {
        &self.blocks
    }

    pub fn block(&self, degree: usize) -> Option<&LinearMap> {
        self.blocks.get(degree)
    }

    /// Number of source degrees on which the map is defined.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn apply(&self, degree: usize, x: &Element) -> Result<Element> {
        let b = self.blocks.get(degree).ok_or(Error::TruncationExceeded {
            needed: degree + 1,
            top: self.blocks.len(),
        })?;
        Ok(b.apply(x))
    }

    /// `d^k` as a linear map out of `degree`.
    pub fn power(&self, degree: usize, k: usize, mode: QMode) -> Result<LinearMap> {
        if degree + k > self.blocks.len() {
            return Err(Error::TruncationExceeded { needed: degree + k, top: self.blocks.len() });
        }
        let src = self.source_dim(degree);
        let mut acc = LinearMap::identity(src, mode);
        for n in degree..degree + k {
            acc = self.blocks[n].compose(&acc);
        }
        Ok(acc)
    }

    fn source_dim(&self, degree: usize) -> usize {
        match self.blocks.get(degree) {
            Some(b) => b.source_dim(),
            None => self.blocks.last().map_or(0, LinearMap::target_dim),
        }
    }

    pub fn scale(&self, c: &Scalar) -> DegreeOneMap {
        let blocks = self
            .blocks
            .iter()
            .map(|b| LinearMap::new(b.target_dim(), b.columns().iter().map(|v| v.scale(c)).collect()))
            .collect();
        DegreeOneMap { blocks }
    }

    pub fn to_file(&self) -> DifferentialFile {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(n, b)| BlockFile {
                degree: n,
                entries: b
                    .columns()
                    .iter()
                    .enumerate()
                    .flat_map(|(col, v)| v.iter().map(move |(row, c)| (row, col, c.to_string())))
                    .collect(),
            })
            .collect();
        DifferentialFile { blocks }
    }
}

/// JSON form of a [`DegreeOneMap`]: per source degree, sparse
/// `[row, column, scalar]` triples in degree-local coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferentialFile {
    pub blocks: Vec<BlockFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockFile {
    pub degree: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl DifferentialFile {
    /// Degrees not listed are zero blocks.
    pub fn to_map(&self, dims: &[usize], mode: QMode) -> Result<DegreeOneMap> {
        let top = dims.len().saturating_sub(1);
        let mut cols: Vec<Vec<Element>> = (0..top).map(|n| vec![Element::new(); dims[n]]).collect();
        for b in &self.blocks {
            if b.degree >= top {
                return Err(Error::TruncationExceeded { needed: b.degree + 1, top });
            }
            for (row, col, s) in &b.entries {
                if *col >= dims[b.degree] || *row >= dims[b.degree + 1] {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({row}, {col}) outside block {}",
                        b.degree
                    )));
                }
                cols[b.degree][*col].add_term(*row, &Scalar::parse_in(s, mode)?);
            }
        }
        let blocks = cols.into_iter().enumerate().map(|(n, c)| LinearMap::new(dims[n + 1], c)).collect();
        DegreeOneMap::new(blocks)
    }
}

/// The ℕ-graded covering p*𝔄 of a ℤ_N-graded algebra, truncated at a top
/// degree, together with the projection π back onto 𝔄.
#[derive(Clone, Debug)]
pub struct Covering {
    algebra: GradedAlgebra,
    modulus: u32,
    /// For each degree n, the global 𝔄-indices copied into degree n.
    sources: Vec<Vec<usize>>,
}

pub fn covering(a: &GradedAlgebra, max_degree: usize) -> Result<Covering> {
    let Grading::ModN(modulus) = a.grading() else {
        return Err(Error::Domain("covering needs a Z_N-graded algebra".into()));
    };
    let sources: Vec<Vec<usize>> =
        (0..=max_degree).map(|n| a.basis_of_degree(n % modulus as usize).to_vec()).collect();
    let mut offset = Vec::with_capacity(sources.len());
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (n, src) in sources.iter().enumerate() {
        offset.push(labels.len());
        for &g in src {
            labels.push(format!("({n},{})", a.label(g)));
            degrees.push(n as u32);
        }
    }
    // position of an 𝔄-index within its residue class
    let pos = |g: usize| a.local_index(g);
    let mut products = BTreeMap::new();
    for m in 0..=max_degree {
        for n in 0..=max_degree - m {
            for (i, &gi) in sources[m].iter().enumerate() {
                for (j, &gj) in sources[n].iter().enumerate() {
                    let p = a.basis_product(gi, gj);
                    if !p.is_zero() {
                        products.insert((offset[m] + i, offset[n] + j), p.map_indices(|g| offset[m + n] + pos(g)));
                    }
                }
            }
        }
    }
    let unit = a.unit_element().map(|u| u.map_indices(|g| offset[0] + pos(g)));
    let algebra = GradedAlgebra::from_data_unchecked(AlgebraData {
        mode: a.mode(),
        labels,
        degrees,
        grading: Grading::Nat,
        products,
        unit,
        top_degree: Some(max_degree),
    })?;
    Ok(Covering { algebra, modulus, sources })
}

impl Covering {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> GradedAlgebra {
        self.algebra
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn top_degree(&self) -> usize {
        self.sources.len() - 1
    }

    /// π on a degree-local element: `(n, α) ↦ α`.
    pub fn project(&self, degree: usize, x: &Element) -> Element {
        x.map_indices(|i| self.sources[degree][i])
    }

    /// π on an element in the covering's global coordinates.
    pub fn project_global(&self, x: &Element) -> Element {
        let mut out = Element::new();
        for (g, c) in x.iter() {
            let n = self.algebra.degree_of(g) as usize;
            out.add_term(self.sources[n][self.algebra.local_index(g)], c);
        }
        out
    }

    /// The copy of a homogeneous 𝔄-element in degree `degree`.
    pub fn embed(&self, degree: usize, alpha: &Element, source: &GradedAlgebra) -> Result<Element> {
        let mut out = Element::new();
        for (g, c) in alpha.iter() {
            let i = self.sources[degree].iter().position(|&h| h == g).ok_or_else(|| {
                Error::NonHomogeneous(format!("{} does not lie in residue {}", source.label(g), degree % self.modulus as usize))
            })?;
            out.add_term(i, c);
        }
        Ok(out)
    }
}

/// A homogeneous map of degree `shift` on a truncated ℕ-graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: usize,
    pub blocks: Vec<LinearMap>,
}

impl GradedMap {
    pub fn apply(&self, degree: usize, x: &Element) -> Option<Element> {
        self.blocks.get(degree).map(|b| b.apply(x))
    }

    pub fn into_degree_one(self) -> Result<DegreeOneMap> {
        if self.shift != 1 {
            return Err(Error::NonHomogeneous(format!("map has degree {}, not 1", self.shift)));
        }
        DegreeOneMap::new(self.blocks)
    }
}

/// The unique lift p*(D) of a homogeneous map `d` on 𝔄 (given on the global
/// basis) to a map of degree `shift` on the covering, with π∘p*(D) = D∘π.
pub fn lift_map(cov: &Covering, source: &GradedAlgebra, d: &LinearMap, shift: usize) -> Result<GradedMap> {
    let n_mod = cov.modulus as usize;
    if d.source_dim() != source.dim_total() || d.target_dim() != source.dim_total() {
        return Err(Error::DimensionMismatch("map does not act on the covered algebra".into()));
    }
    for g in 0..source.dim_total() {
        let want = (source.degree_of(g) as usize + shift) % n_mod;
        if let Some(h) = d.column(g).indices().find(|&h| source.degree_of(h) as usize != want) {
            return Err(Error::NonHomogeneous(format!(
                "image of {} has a term {} outside residue {want}",
                source.label(g),
                source.label(h)
            )));
        }
    }
    let top = cov.top_degree();
    let blocks = (0..=top.saturating_sub(shift))
        .take_while(|n| n + shift <= top)
        .map(|n| {
            let cols = cov.sources[n]
                .iter()
                .map(|&g| d.column(g).map_indices(|h| source.local_index(h)))
                .collect();
            LinearMap::new(cov.sources[n + shift].len(), cols)
        })
        .collect();
    Ok(GradedMap { shift, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const M2: QMode = QMode::RootOfUnity(2);

    #[test]
    fn diagonal_algebra_is_valid() {
        let a = fixtures::diagonal(2, QMode::Generic);
        assert!(a.validate().is_ok());
        assert_eq!(a.unit_element().unwrap().nnz(), 2);
    }

    #[test]
    fn matrix_units_are_valid() {
        let m = fixtures::matrix_units(2, M2);
        assert!(m.validate().is_ok());
        assert_eq!(m.grading(), Grading::ModN(2));
    }

    #[test]
    fn corrupted_matrix_units_fail_associativity() {
        let m = fixtures::matrix_units(2, M2);
        let mut data = fixtures::matrix_units_data(2, M2);
        // E^1_2 E^2_1 = 0 instead of E^2_2
        let i = fixtures::matrix_unit_index(2, 1, 2);
        let j = fixtures::matrix_unit_index(2, 2, 1);
        data.products.remove(&(i, j));
        let err = make_algebra(data).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation(..)), "{err}");
        drop(m);
    }

    #[test]
    fn grading_and_unit_violations_are_named() {
        let mut data = fixtures::diagonal_data(2, QMode::Generic);
        data.degrees = vec![0, 1];
        data.grading = Grading::Nat;
        data.unit = None;
        // p2 p2 = p2 has degree 1, not 2
        assert_eq!(make_algebra(data).unwrap_err(), Error::GradingViolation(1, 1));

        let mut data = fixtures::diagonal_data(2, QMode::Generic);
        data.unit = Some(Element::basis(0, QMode::Generic));
        assert_eq!(make_algebra(data).unwrap_err(), Error::UnitViolation(1));
    }

    #[test]
    fn covering_dimensions_and_projection() {
        let m = fixtures::matrix_units(2, M2);
        let cov = covering(&m, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(cov.algebra().dim(n), 2);
        }
        assert!(cov.algebra().validate().is_ok());
        // π is multiplicative on basis pairs
        let a = cov.algebra();
        for x in 0..a.dim_total() {
            for y in 0..a.dim_total() {
                let (bx, by) = (Element::basis(x, M2), Element::basis(y, M2));
                let lhs = cov.project_global(&a.mul(&bx, &by));
                let rhs = m.mul(&cov.project_global(&bx), &cov.project_global(&by));
                let within = a.degree_of(x) + a.degree_of(y) <= 5;
                if within {
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn covering_of_degree_zero_algebra() {
        let mut data = fixtures::diagonal_data(2, M2);
        data.grading = Grading::ModN(3);
        let a = make_algebra(data).unwrap();
        let cov = covering(&a, 6).unwrap();
        let dims: Vec<usize> = (0..=6).map(|n| cov.algebra().dim(n)).collect();
        assert_eq!(dims, vec![2, 0, 0, 2, 0, 0, 2]);
    }

    #[test]
    fn lift_of_zero_and_non_homogeneous() {
        let m = fixtures::matrix_units(2, M2);
        let cov = covering(&m, 4).unwrap();
        let zero = LinearMap::zero(4, 4);
        let lifted = lift_map(&cov, &m, &zero, 1).unwrap();
        assert!(lifted.blocks.iter().all(LinearMap::is_zero));
        // identity is degree 0, not degree 1
        let id = LinearMap::identity(4, M2);
        assert!(matches!(lift_map(&cov, &m, &id, 1), Err(Error::NonHomogeneous(_))));
    }

    #[test]
    fn lift_of_left_multiplication_intertwines() {
        let m = fixtures::matrix_units(2, M2);
        let e = fixtures::cyclic_shift(2, &[1, 1], M2);
        let cols = (0..4).map(|g| m.mul(&e, &Element::basis(g, M2))).collect();
        let left = LinearMap::new(4, cols);
        let cov = covering(&m, 5).unwrap();
        let lifted = lift_map(&cov, &m, &left, 1).unwrap();
        for n in 0..5 {
            for i in 0..cov.algebra().dim(n) {
                let x = Element::basis(i, M2);
                let up = cov.project(n + 1, &lifted.apply(n, &x).unwrap());
                let down = left.apply(&cov.project(n, &x));
                assert_eq!(up, down);
            }
        }
    }

    #[test]
    fn presentation_file_round_trip() {
        let m = fixtures::matrix_units(2, M2);
        let file = m.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&json).unwrap();
        let rebuilt = back.build(M2).unwrap();
        assert_eq!(rebuilt.to_file(), file);
    }

    #[test]
    fn differential_file_round_trip() {
        let m = fixtures::matrix_units(2, M2);
        let cov = covering(&m, 3).unwrap();
        let dims = cov.algebra().dims();
        let d = DegreeOneMap::from_fn(&dims, |_, i| Element::basis(1 - i, M2));
        let file = d.to_file();
        assert_eq!(file.to_map(&dims, M2).unwrap(), d);
    }
}
