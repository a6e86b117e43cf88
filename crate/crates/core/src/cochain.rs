//! Hochschild cochains on a finite-dimensional algebra stored as dense tuple
//! tables, the cup product, the coboundaries `δ_q`, `δ′_q`, `m*_q`, the map
//! Ψ from the tensor calculus, and the associativity detector built on
//! `(m*_q)^N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{DegreeOneMap, Element, GradedAlgebra, TruncatedAlgebra};
use crate::linalg::LinearMap;
use crate::scalar::{q_int, QMode, Scalar};
use crate::tensor::TensorAlgebra;

/// A bilinear product on a finite basis, associative or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearProduct {
    mode: QMode,
    dim: usize,
    /// `table[i * dim + j] = b_i b_j`.
    table: Vec<Element>,
    unit: Option<Element>,
}

impl BilinearProduct {
    pub fn from_table(dim: usize, table: Vec<Element>, unit: Option<Element>, mode: QMode) -> Self {
        assert_eq!(table.len(), dim * dim, "product table must be dim × dim");
        BilinearProduct { mode, dim, table, unit }
    }

    /// The degree-0 part of a validated algebra concentrated in degree 0.
    pub fn from_algebra(a: &GradedAlgebra) -> Result<Self> {
        let dim = a.dim_total();
        if (0..dim).any(|i| a.degree_of(i) != 0) {
            return Err(Error::Domain("cochains are taken on an algebra concentrated in degree 0".into()));
        }
        let table = (0..dim * dim).map(|k| a.basis_product(k / dim, k % dim)).collect();
        Ok(BilinearProduct { mode: a.mode(), dim, table, unit: a.unit_element().cloned() })
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), self.basis_product(i, j));
            }
        }
        out
    }

    /// `(b_x b_y) b_z − b_x (b_y b_z)`.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> Element {
        let b = |i| Element::basis(i, self.mode);
        self.mul(self.basis_product(x, y), &b(z)).sub(&self.mul(&b(x), self.basis_product(y, z)))
    }

    /// First basis triple on which associativity fails.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        (0..n * n * n)
            .map(|t| (t / (n * n), (t / n) % n, t % n))
            .find(|&(x, y, z)| !self.associator(x, y, z).is_zero())
    }
}

/// A bimodule over a [`BilinearProduct`], with both actions tabulated on bases.
#[derive(Clone, Debug)]
pub struct Bimodule {
    algebra_dim: usize,
    dim: usize,
    /// `left[a * dim + m] = b_a · m_m`
    left: Vec<Element>,
    /// `right[m * algebra_dim + a] = m_m · b_a`
    right: Vec<Element>,
}

impl Bimodule {
    /// The algebra acting on itself from both sides.
    pub fn regular(p: &BilinearProduct) -> Self {
        let n = p.dim;
        let table: Vec<Element> = (0..n * n).map(|k| p.basis_product(k / n, k % n).clone()).collect();
        Bimodule { algebra_dim: n, dim: n, left: table.clone(), right: table }
    }

    /// `𝔗^k(𝒜) = 𝒜^{⊗(k+1)}` with the algebra acting on the outer factors.
    pub fn tensor_power(t: &TensorAlgebra, k: usize) -> Self {
        let n = t.base_dim();
        let mode = t.mode();
        let dim = t.dim(k);
        let mut left = Vec::with_capacity(n * dim);
        for a in 0..n {
            for m in 0..dim {
                left.push(t.mul_basis(0, a, k, m));
            }
        }
        let _ = mode;
        let mut right = Vec::with_capacity(dim * n);
        for m in 0..dim {
            for a in 0..n {
                right.push(t.mul_basis(k, m, 0, a));
            }
        }
        Bimodule { algebra_dim: n, dim, left, right }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, a: usize, m: &Element) -> Element {
        let mut out = Element::new();
        for (i, c) in m.iter() {
            out.add_scaled(c, &self.left[a * self.dim + i]);
        }
        out
    }

    pub fn right(&self, m: &Element, a: usize) -> Element {
        let mut out = Element::new();
        for (i, c) in m.iter() {
            out.add_scaled(c, &self.right[i * self.algebra_dim + a]);
        }
        out
    }

    /// Checks `(xy)m = x(ym)`, `(mx)y = m(xy)`, `(xm)y = x(my)` and the unit,
    /// on bases. Returns a description of the first failure.
    pub fn validate(&self, p: &BilinearProduct) -> Result<()> {
        let n = p.dim;
        let mode = p.mode;
        let fail = |s: String| Err(Error::HomomorphismViolation(s));
        for x in 0..n {
            for y in 0..n {
                for m in 0..self.dim {
                    let em = Element::basis(m, mode);
                    let xy = p.basis_product(x, y);
                    let mut l1 = Element::new();
                    for (k, c) in xy.iter() {
                        l1.add_scaled(c, &self.left(k, &em));
                    }
                    if l1 != self.left(x, &self.left(y, &em)) {
                        return fail(format!("left action not associative at ({x}, {y}, m{m})"));
                    }
                    let mut r1 = Element::new();
                    for (k, c) in xy.iter() {
                        r1.add_scaled(c, &self.right(&em, k));
                    }
                    if r1 != self.right(&self.right(&em, x), y) {
                        return fail(format!("right action not associative at (m{m}, {x}, {y})"));
                    }
                    if self.right(&self.left(x, &em), y) != self.left(x, &self.right(&em, y)) {
                        return fail(format!("actions do not commute at ({x}, m{m}, {y})"));
                    }
                }
            }
        }
        if let Some(u) = &p.unit {
            for m in 0..self.dim {
                let em = Element::basis(m, mode);
                let mut l = Element::new();
                let mut r = Element::new();
                for (k, c) in u.iter() {
                    l.add_scaled(c, &self.left(k, &em));
                    r.add_scaled(c, &self.right(&em, k));
                }
                if l != em || r != em {
                    return fail(format!("unit does not act as identity on m{m}"));
                }
            }
        }
        Ok(())
    }
}

/// An n-linear map on the algebra, tabulated on basis tuples. Tuples are
/// indexed in mixed radix with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: Vec<Element>,
}

pub(crate) fn encode(args: &[usize], base: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * base + a)
}

pub(crate) fn decode(mut idx: usize, len: usize, base: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

impl Cochain {
    pub fn zero(algebra_dim: usize, degree: usize) -> Self {
        Cochain { degree, values: vec![Element::new(); algebra_dim.pow(degree as u32)] }
    }

    pub fn from_values(degree: usize, values: Vec<Element>) -> Self {
        Cochain { degree, values }
    }

    /// The cochain sending one basis tuple to `value` and all others to 0.
    pub fn basis(algebra_dim: usize, degree: usize, tuple: usize, value: Element) -> Self {
        let mut c = Self::zero(algebra_dim, degree);
        c.values[tuple] = value;
        c
    }

    /// A module element viewed as a 0-cochain.
    pub fn constant(value: Element) -> Self {
        Cochain { degree: 0, values: vec![value] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn at(&self, tuple: usize) -> &Element {
        &self.values[tuple]
    }

    pub fn eval(&self, args: &[usize], algebra_dim: usize) -> &Element {
        debug_assert_eq!(args.len(), self.degree);
        &self.values[encode(args, algebra_dim)]
    }

    /// Value on arbitrary (non-basis) arguments, by multilinearity.
    pub fn eval_multilinear(&self, args: &[Element], algebra_dim: usize) -> Element {
        debug_assert_eq!(args.len(), self.degree);
        let mut out = Element::new();
        let mut stack: Vec<(usize, usize, Option<Scalar>)> = vec![(0, 0, None)];
        while let Some((pos, idx, coeff)) = stack.pop() {
            if pos == args.len() {
                match coeff {
                    Some(c) => out.add_scaled(&c, &self.values[idx]),
                    None => out = out.add(&self.values[idx]),
                }
                continue;
            }
            for (a, c) in args[pos].iter() {
                let next = match &coeff {
                    Some(k) => k * c,
                    None => c.clone(),
                };
                stack.push((pos + 1, idx * algebra_dim + a, Some(next)));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Element::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { degree: self.degree, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    /// Flattened coordinates `tuple * codomain_dim + k`.
    pub fn to_vector(&self, codomain_dim: usize) -> Element {
        let mut out = Element::new();
        for (t, v) in self.values.iter().enumerate() {
            for (k, c) in v.iter() {
                out.add_term(t * codomain_dim + k, c);
            }
        }
        out
    }

    pub fn from_vector(v: &Element, degree: usize, algebra_dim: usize, codomain_dim: usize) -> Cochain {
        let mut c = Cochain::zero(algebra_dim, degree);
        for (i, x) in v.iter() {
            c.values[i / codomain_dim].add_term(i % codomain_dim, x);
        }
        c
    }
}

/// Shared evaluator: `left·x₀ω(x₁..xₙ) + Σ_k inner(k)·ω(..x_{k−1}x_k..) + right·ω(x₀..x_{n−1})x_n`.
fn coboundary(
    p: &BilinearProduct,
    module: Option<&Bimodule>,
    w: &Cochain,
    left: Option<Scalar>,
    inner: impl Fn(usize) -> Scalar,
    right: Option<Scalar>,
) -> Cochain {
    let n = w.degree;
    let dim = p.dim;
    let len = dim.pow(n as u32 + 1);
    let inner: Vec<Scalar> = (1..=n).map(&inner).collect();
    let values = (0..len)
        .map(|t| {
            let x = decode(t, n + 1, dim);
            let mut v = Element::new();
            if let (Some(c), Some(m)) = (&left, module) {
                let inner_val = w.eval(&x[1..], dim);
                if !inner_val.is_zero() {
                    v.add_scaled(c, &m.left(x[0], inner_val));
                }
            }
            for k in 1..=n {
                let c = &inner[k - 1];
                if c.is_zero() {
                    continue;
                }
                let prod = p.basis_product(x[k - 1], x[k]);
                if prod.is_zero() {
                    continue;
                }
                let mut args: Vec<usize> = Vec::with_capacity(n);
                args.extend_from_slice(&x[..k - 1]);
                args.push(0);
                args.extend_from_slice(&x[k + 1..]);
                for (j, pc) in prod.iter() {
                    args[k - 1] = j;
                    let val = w.eval(&args, dim);
                    if !val.is_zero() {
                        v.add_scaled(&(c * pc), val);
                    }
                }
            }
            if let (Some(c), Some(m)) = (&right, module) {
                let inner_val = w.eval(&x[..n], dim);
                if !inner_val.is_zero() {
                    v.add_scaled(c, &m.right(inner_val, x[n]));
                }
            }
            v
        })
        .collect();
    Cochain { degree: n + 1, values }
}

fn trivial_q(mode: QMode) -> bool {
    mode.order() == Some(1)
}

/// `δ_q ω(x₀..xₙ) = x₀ω(x₁..xₙ) + Σ_{k=1}^n q^k ω(..x_{k−1}x_k..) − q^n ω(x₀..x_{n−1})x_n`;
/// zero when `q = 1`.
pub fn delta_q(p: &BilinearProduct, module: &Bimodule, w: &Cochain) -> Cochain {
    let mode = p.mode;
    if trivial_q(mode) {
        return Cochain::zero(p.dim, w.degree + 1);
    }
    let n = w.degree as i64;
    coboundary(p, Some(module), w, Some(Scalar::one(mode)), |k| Scalar::q_pow(k as i64, mode), Some(-Scalar::q_pow(n, mode)))
}

/// As [`delta_q`] with the middle sum replaced by `−Σ q^{k−1} ω(..x_{k−1}x_k..)`.
pub fn delta_prime_q(p: &BilinearProduct, module: &Bimodule, w: &Cochain) -> Cochain {
    let mode = p.mode;
    if trivial_q(mode) {
        return Cochain::zero(p.dim, w.degree + 1);
    }
    let n = w.degree as i64;
    coboundary(p, Some(module), w, Some(Scalar::one(mode)), |k| -Scalar::q_pow(k as i64 - 1, mode), Some(-Scalar::q_pow(n, mode)))
}

/// `m*_q ω(x₀..xₙ) = Σ_{k=1}^n q^{k−1} ω(..x_{k−1}x_k..)`; needs no bimodule
/// and no associativity. Zero when `q = 1`.
pub fn m_star_q(p: &BilinearProduct, w: &Cochain) -> Cochain {
    let mode = p.mode;
    if trivial_q(mode) {
        return Cochain::zero(p.dim, w.degree + 1);
    }
    coboundary(p, None, w, None, |k| Scalar::q_pow(k as i64 - 1, mode), None)
}

/// The ordinary Hochschild coboundary, whatever the mode.
pub fn hochschild(p: &BilinearProduct, module: &Bimodule, w: &Cochain) -> Cochain {
    let mode = p.mode;
    let sign = |k: usize| Scalar::from_int(if k.is_multiple_of(2) { 1 } else { -1 }, mode);
    coboundary(p, Some(module), w, Some(Scalar::one(mode)), sign, Some(-sign(w.degree)))
}

/// The two outer terms `x₀ω(x₁..xₙ) − q^n ω(x₀..x_{n−1})x_n` on their own.
pub fn twisted_action(p: &BilinearProduct, module: &Bimodule, w: &Cochain) -> Cochain {
    let mode = p.mode;
    let n = w.degree as i64;
    coboundary(p, Some(module), w, Some(Scalar::one(mode)), |_| Scalar::zero(mode), Some(-Scalar::q_pow(n, mode)))
}

/// `(a ∪ b)(x₁..x_{r+s}) = pair(a(x₁..x_r), b(x_{r+1}..x_{r+s}))`.
pub fn cup(a: &Cochain, b: &Cochain, algebra_dim: usize, pair: impl Fn(&Element, &Element) -> Element) -> Cochain {
    let nb = b.values.len();
    let mut values = Vec::with_capacity(a.values.len() * nb);
    for va in &a.values {
        for vb in &b.values {
            values.push(if va.is_zero() || vb.is_zero() { Element::new() } else { pair(va, vb) });
        }
    }
    debug_assert_eq!(values.len(), algebra_dim.pow((a.degree + b.degree) as u32));
    Cochain { degree: a.degree + b.degree, values }
}

/// Cup product of algebra-valued cochains, using `𝒜 ⊗_𝒜 𝒜 = 𝒜`.
pub fn cup_in_algebra(p: &BilinearProduct, a: &Cochain, b: &Cochain) -> Cochain {
    cup(a, b, p.dim, |x, y| p.mul(x, y))
}

/// The map `id ∈ C¹(𝒜, 𝒜)`.
pub fn identity_cochain(p: &BilinearProduct) -> Cochain {
    Cochain { degree: 1, values: (0..p.dim).map(|i| Element::basis(i, p.mode)).collect() }
}

/// `Ψ(x₀⊗…⊗xₙ)(y₁..yₙ) = x₀y₁x₁…yₙxₙ` on a basis tensor.
pub fn psi(t: &TensorAlgebra, degree: usize, index: usize) -> Cochain {
    let p = t.base_product();
    let mode = p.mode;
    let dim = p.dim;
    let x = decode(index, degree + 1, dim);
    let values = (0..dim.pow(degree as u32))
        .map(|s| {
            let y = decode(s, degree, dim);
            let mut v = Element::basis(x[0], mode);
            for i in 0..degree {
                v = p.mul(&v, &Element::basis(y[i], mode));
                v = p.mul(&v, &Element::basis(x[i + 1], mode));
                if v.is_zero() {
                    break;
                }
            }
            v
        })
        .collect();
    Cochain { degree, values }
}

/// Ψ extended linearly to an element of `𝔗^n`.
pub fn psi_element(t: &TensorAlgebra, degree: usize, x: &Element) -> Cochain {
    let dim = t.base_dim();
    let mut out = Cochain::zero(dim, degree);
    for (i, c) in x.iter() {
        out = out.add(&psi(t, degree, i).scale(c));
    }
    out
}

/// Both sides of `(m*_q)^N ω(x, y, 1, …, 1, z) = [N−2]_q q^{N−2} ω((xy)z − x(yz))`
/// for every basis triple, where `N` is the order of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectRow {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub computed: Element,
    pub predicted: Element,
}

pub fn defect_table(p: &BilinearProduct, w: &Cochain) -> Result<Vec<DefectRow>> {
    let order = match p.mode.order() {
        Some(n) if n >= 3 => n as usize,
        _ => return Err(Error::Domain(format!("the associativity criterion needs q of order N >= 3, got {}", p.mode))),
    };
    if w.degree != 1 {
        return Err(Error::Domain("the associativity criterion takes a 1-cochain".into()));
    }
    let unit = p.unit.clone().ok_or_else(|| Error::Domain("the associativity criterion needs a unit".into()))?;
    let mut power = w.clone();
    for _ in 0..order {
        power = m_star_q(p, &power);
    }
    let factor = &q_int(order as u32 - 2, p.mode) * &Scalar::q_pow(order as i64 - 2, p.mode);
    let dim = p.dim;
    let mut rows = Vec::with_capacity(dim * dim * dim);
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let mut args = vec![Element::basis(x, p.mode), Element::basis(y, p.mode)];
                args.extend(std::iter::repeat_n(unit.clone(), order - 2));
                args.push(Element::basis(z, p.mode));
                let computed = power.eval_multilinear(&args, dim);
                let predicted = w.eval_multilinear(&[p.associator(x, y, z)], dim).scale(&factor);
                rows.push(DefectRow { x, y, z, computed, predicted });
            }
        }
    }
    Ok(rows)
}

/// The single-triple form: `(computed, predicted)`.
pub fn associativity_defect(p: &BilinearProduct, w: &Cochain, x: usize, y: usize, z: usize) -> Result<(Element, Element)> {
    let rows = defect_table(p, w)?;
    let d = p.dim;
    let r = rows.into_iter().nth((x * d + y) * d + z).ok_or_else(|| Error::IllFormed("basis index out of range".into()))?;
    Ok((r.computed, r.predicted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Values {
    /// `C(𝒜, 𝒜)`.
    Algebra,
    /// `C(𝒜) = C(𝒜, ℂ)`.
    Scalars,
}

/// The truncated cochain algebra with the cup product; degree `n` has the
/// basis `(tuple, k)` flattened as `tuple * codomain_dim + k`.
#[derive(Clone, Debug)]
pub struct CochainAlgebra {
    product: BilinearProduct,
    values: Values,
    top: usize,
}

impl CochainAlgebra {
    pub fn new(product: BilinearProduct, values: Values, top: usize) -> Self {
        CochainAlgebra { product, values, top }
    }

    pub fn product(&self) -> &BilinearProduct {
        &self.product
    }

    pub fn codomain_dim(&self) -> usize {
        match self.values {
            Values::Algebra => self.product.dim,
            Values::Scalars => 1,
        }
    }

    pub fn to_cochain(&self, degree: usize, v: &Element) -> Cochain {
        Cochain::from_vector(v, degree, self.product.dim, self.codomain_dim())
    }

    pub fn from_cochain(&self, c: &Cochain) -> Element {
        c.to_vector(self.codomain_dim())
    }

    fn map_of(&self, op: impl Fn(&Cochain) -> Cochain + Sync) -> DegreeOneMap {
        let dims = self.dims();
        let a = self.product.dim;
        let cod = self.codomain_dim();
        let mode = self.product.mode;
        let blocks = (0..self.top)
            .map(|n| {
                let cols = (0..dims[n])
                    .map(|i| {
                        let c = Cochain::basis(a, n, i / cod, Element::basis(i % cod, mode));
                        op(&c).to_vector(cod)
                    })
                    .collect();
                LinearMap::new(dims[n + 1], cols)
            })
            .collect();
        DegreeOneMap::new(blocks).expect("cochain blocks chain")
    }

    /// `δ_q` on `C(𝒜, 𝒜)` with the regular bimodule.
    pub fn delta_q_map(&self) -> Result<DegreeOneMap> {
        let m = self.regular()?;
        Ok(self.map_of(|c| delta_q(&self.product, &m, c)))
    }

    pub fn delta_prime_q_map(&self) -> Result<DegreeOneMap> {
        let m = self.regular()?;
        Ok(self.map_of(|c| delta_prime_q(&self.product, &m, c)))
    }

    pub fn hochschild_map(&self) -> Result<DegreeOneMap> {
        let m = self.regular()?;
        Ok(self.map_of(|c| hochschild(&self.product, &m, c)))
    }

    pub fn m_star_q_map(&self) -> DegreeOneMap {
        self.map_of(|c| m_star_q(&self.product, c))
    }

    fn regular(&self) -> Result<Bimodule> {
        match self.values {
            Values::Algebra => Ok(Bimodule::regular(&self.product)),
            Values::Scalars => Err(Error::Domain("scalar-valued cochains carry no bimodule action here".into())),
        }
    }
}

impl TruncatedAlgebra for CochainAlgebra {
    fn mode(&self) -> QMode {
        self.product.mode
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn dim(&self, degree: usize) -> usize {
        if degree > self.top {
            return 0;
        }
        self.product.dim.pow(degree as u32) * self.codomain_dim()
    }

    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element {
        if da + db > self.top {
            return Element::new();
        }
        let cod = self.codomain_dim();
        let tuple = (a / cod) * self.product.dim.pow(db as u32) + b / cod;
        match self.values {
            Values::Scalars => Element::basis(tuple, self.product.mode),
            Values::Algebra => {
                self.product.basis_product(a % cod, b % cod).map_indices(|k| tuple * cod + k)
            }
        }
    }

    fn unit(&self) -> Option<Element> {
        match self.values {
            Values::Scalars => Some(Element::basis(0, self.product.mode)),
            Values::Algebra => self.product.unit.clone(),
        }
    }

    fn basis_label(&self, degree: usize, index: usize) -> String {
        let cod = self.codomain_dim();
        let args = decode(index / cod, degree, self.product.dim);
        match self.values {
            Values::Scalars => format!("w{args:?}"),
            Values::Algebra => format!("w{args:?}->b{}", index % cod),
        }
    }
}

/// Outcome of the cup-power checks for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupPowerReport {
    pub n: usize,
    /// `δ d^∪n = 0` for the ordinary coboundary with values in `𝔗^n`.
    pub cocycle: bool,
    /// `d^∪n` vanishes whenever an argument is the unit.
    pub normalized: bool,
    /// `δ(−τ·d^∪(n−1)) = d^∪n`.
    pub identity: bool,
    /// Every value of `τ·d^∪(n−1)` lies in `𝒜 ⊗ Ω^{n−1}(𝒜)`.
    pub in_a_tensor_omega: bool,
}

impl CupPowerReport {
    pub fn holds(&self) -> bool {
        self.cocycle && self.normalized && self.identity && self.in_a_tensor_omega
    }
}

/// `d^∪n(x₁..xₙ) = dx₁⋯dxₙ ∈ 𝔗^n(𝒜)` with `dx = 1⊗x − x⊗1`.
pub fn cup_power(t: &TensorAlgebra, n: usize) -> Cochain {
    let dim = t.base_dim();
    let mode = t.mode();
    if n == 0 {
        return Cochain::constant(t.unit_element());
    }
    let dx: Vec<Element> = (0..dim).map(|x| t.universal_derivation(&Element::basis(x, mode))).collect();
    let values = (0..dim.pow(n as u32))
        .map(|s| {
            let args = decode(s, n, dim);
            let mut v = dx[args[0]].clone();
            for (k, &a) in args.iter().enumerate().skip(1) {
                v = t.mul(k, &v, 1, &dx[a]);
            }
            v
        })
        .collect();
    Cochain { degree: n, values }
}

pub fn cup_power_triviality(t: &TensorAlgebra, n: usize) -> Result<CupPowerReport> {
    if n == 0 || n > t.top_degree() {
        return Err(Error::TruncationExceeded { needed: n, top: t.top_degree() });
    }
    let p = t.base_product();
    let dim = p.dim;
    let mode = p.mode;
    let unit = p.unit.clone().ok_or_else(|| Error::Domain("cup powers need a unit".into()))?;
    let module = Bimodule::tensor_power(t, n);
    let dn = cup_power(t, n);

    let cocycle = hochschild(p, &module, &dn).is_zero();

    let normalized = (0..n).all(|pos| {
        (0..dim.pow(n as u32 - 1)).all(|s| {
            let rest = decode(s, n - 1, dim);
            let mut args: Vec<Element> = rest.iter().map(|&a| Element::basis(a, mode)).collect();
            args.insert(pos, unit.clone());
            dn.eval_multilinear(&args, dim).is_zero()
        })
    });

    let prev = cup_power(t, n - 1);
    let tau = t.tau();
    let shifted = Cochain {
        degree: n - 1,
        values: prev.values.iter().map(|v| t.mul(1, &tau, n - 1, v).neg()).collect(),
    };
    let identity = hochschild(p, &module, &shifted) == dn;
    let in_a_tensor_omega = shifted.values.iter().all(|v| (1..n).all(|pos| t.contract(n, pos, v).is_zero()));

    Ok(CupPowerReport { n, cocycle, normalized, identity, in_a_tensor_omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const G: QMode = QMode::Generic;

    fn c2(mode: QMode) -> BilinearProduct {
        BilinearProduct::from_algebra(&fixtures::diagonal(2, mode)).unwrap()
    }

    #[test]
    fn cup_of_identities_is_multiplication() {
        let p = c2(G);
        let id = identity_cochain(&p);
        let c = cup_in_algebra(&p, &id, &id);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(c.eval(&[x, y], 2), p.basis_product(x, y));
            }
        }
    }

    #[test]
    fn delta_of_identity_is_multiplication() {
        let p = c2(G);
        let m = Bimodule::regular(&p);
        let d = delta_q(&p, &m, &identity_cochain(&p));
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(d.eval(&[x, y], 2), p.basis_product(x, y));
            }
        }
    }

    #[test]
    fn delta_of_commutative_constant_vanishes() {
        let p = c2(G);
        let m = Bimodule::regular(&p);
        let w = Cochain::constant(Element::basis(1, G));
        assert!(delta_q(&p, &m, &w).is_zero());
        assert!(delta_prime_q(&p, &m, &w).is_zero());
        assert!(m_star_q(&p, &w).is_zero());
    }

    #[test]
    fn m_star_squared_on_one_cochains() {
        let p = BilinearProduct::from_algebra(&fixtures::dual_numbers(G)).unwrap();
        let w = Cochain::basis(2, 1, 1, Element::basis(0, G));
        let twice = m_star_q(&p, &m_star_q(&p, &w));
        let one_plus_q = q_int(2, G);
        for t in 0..8 {
            let x = decode(t, 3, 2);
            let xyz = p.mul(&p.mul(&Element::basis(x[0], G), &Element::basis(x[1], G)), &Element::basis(x[2], G));
            let want = w.eval_multilinear(&[xyz], 2).scale(&one_plus_q);
            assert_eq!(twice.eval(&x, 2), &want);
        }
    }

    #[test]
    fn defect_table_needs_order_three() {
        let p = c2(QMode::RootOfUnity(2));
        let w = identity_cochain(&p);
        assert!(matches!(defect_table(&p, &w), Err(Error::Domain(_))));
    }

    #[test]
    fn non_associative_fixture_is_unital() {
        let p = fixtures::non_associative(QMode::RootOfUnity(3));
        assert!(p.associativity_witness().is_some());
        let u = p.unit().unwrap().clone();
        for i in 0..3 {
            let b = Element::basis(i, p.mode());
            assert_eq!(p.mul(&u, &b), b);
            assert_eq!(p.mul(&b, &u), b);
        }
    }

    #[test]
    fn regular_bimodule_is_valid() {
        let p = BilinearProduct::from_algebra(&fixtures::dual_numbers(G)).unwrap();
        assert!(Bimodule::regular(&p).validate(&p).is_ok());
    }
}
