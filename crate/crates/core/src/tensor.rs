//! The tensor calculus `𝔗(𝒜) = ⊕ 𝒜^{⊗(n+1)}` with its q-differentials, the
//! extension homomorphisms out of it, the classical `Ω(𝒜)` inside it, and the
//! q-differential subalgebra generated by `𝒜`.

pub mod envelope;

use serde::Serialize;

use crate::cochain::{decode, BilinearProduct};
use crate::error::{Error, Result};
use crate::graded::{DegreeOneMap, Element, GradedAlgebra, GradedMap, TruncatedAlgebra};
use crate::linalg::{Echelon, LinearMap};
use crate::qdla::{attach, QDiffAlgebra};
use crate::scalar::{QMode, Scalar};

/// `𝔗(𝒜)` truncated at `top`. A basis tensor `x₀⊗…⊗xₙ` has index
/// `Σ xᵢ · dim^{n−i}`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    base: GradedAlgebra,
    product: BilinearProduct,
    unit: Element,
    top: usize,
    powers: Vec<usize>,
}

impl TensorAlgebra {
    pub fn new(base: &GradedAlgebra, top: usize) -> Result<Self> {
        let product = BilinearProduct::from_algebra(base)?;
        let unit = product
            .unit()
            .cloned()
            .ok_or_else(|| Error::Domain("the tensor calculus needs a unital algebra".into()))?;
        let dim = product.dim();
        let powers = (0..=top + 2).map(|k| dim.pow(k as u32)).collect();
        Ok(TensorAlgebra { base: base.clone(), product, unit, top, powers })
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn base_product(&self) -> &BilinearProduct {
        &self.product
    }

    pub fn base_dim(&self) -> usize {
        self.product.dim()
    }

    pub fn unit_element(&self) -> Element {
        self.unit.clone()
    }

    pub fn index(&self, factors: &[usize]) -> usize {
        factors.iter().fold(0, |acc, &x| acc * self.base_dim() + x)
    }

    pub fn factors(&self, degree: usize, index: usize) -> Vec<usize> {
        decode(index, degree + 1, self.base_dim())
    }

    /// `τ = 1⊗1`.
    pub fn tau(&self) -> Element {
        self.insert_unit(0, &self.unit, 0)
    }

    /// `dx = 1⊗x − x⊗1`.
    pub fn universal_derivation(&self, x: &Element) -> Element {
        self.insert_unit(0, x, 0).sub(&self.insert_unit(0, x, 1))
    }

    /// Inserts the unit as a new factor at position `pos` (0..=degree+1).
    pub fn insert_unit(&self, degree: usize, x: &Element, pos: usize) -> Element {
        let tail = self.powers[degree + 1 - pos];
        let mut out = Element::new();
        for (i, c) in x.iter() {
            let (head, rest) = (i / tail, i % tail);
            for (u, uc) in self.unit.iter() {
                out.add_term((head * self.base_dim() + u) * tail + rest, &(c * uc));
            }
        }
        out
    }

    /// Multiplies the factors at `pos` and `pos + 1` of a degree-`degree` tensor.
    pub fn contract(&self, degree: usize, pos: usize, x: &Element) -> Element {
        assert!(pos < degree, "no factor after position {pos}");
        let dim = self.base_dim();
        let tail = self.powers[degree - 1 - pos];
        let mut out = Element::new();
        for (i, c) in x.iter() {
            let rest = i % tail;
            let b = (i / tail) % dim;
            let a = (i / tail / dim) % dim;
            let head = i / tail / dim / dim;
            for (k, pc) in self.product.basis_product(a, b).iter() {
                out.add_term((head * dim + k) * tail + rest, &(c * pc));
            }
        }
        out
    }
}

impl TruncatedAlgebra for TensorAlgebra {
    fn mode(&self) -> QMode {
        self.product.mode()
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn dim(&self, degree: usize) -> usize {
        if degree > self.top {
            0
        } else {
            self.powers[degree + 1]
        }
    }

    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element {
        if da + db > self.top {
            return Element::new();
        }
        let dim = self.base_dim();
        let tail = self.powers[db];
        let (head, last) = (a / dim, a % dim);
        let (first, rest) = (b / tail, b % tail);
        self.product
            .basis_product(last, first)
            .map_indices(|k| (head * dim + k) * tail + rest)
    }

    fn mul(&self, da: usize, x: &Element, db: usize, y: &Element) -> Element {
        let mut out = Element::new();
        if da + db > self.top {
            return out;
        }
        let dim = self.base_dim();
        let tail = self.powers[db];
        for (i, a) in x.iter() {
            let (head, last) = (i / dim, i % dim);
            for (j, b) in y.iter() {
                let (first, rest) = (j / tail, j % tail);
                let p = self.product.basis_product(last, first);
                if p.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in p.iter() {
                    out.add_term((head * dim + k) * tail + rest, &(&ab * c));
                }
            }
        }
        out
    }

    fn unit(&self) -> Option<Element> {
        Some(self.unit.clone())
    }

    fn basis_label(&self, degree: usize, index: usize) -> String {
        self.factors(degree, index)
            .iter()
            .map(|&x| self.base.label(x).to_string())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `d_q(τ) = τ²`
    D,
    /// `d′_q(τ) = −qτ²`
    DPrime,
}

/// Coefficient of the unit inserted at position `pos` when differentiating a
/// degree-`n` basis tensor.
fn insertion_coefficient(variant: Variant, n: usize, pos: usize, mode: QMode) -> Scalar {
    if pos == 0 {
        Scalar::one(mode)
    } else if pos == n + 1 {
        -Scalar::q_pow(n as i64, mode)
    } else {
        match variant {
            Variant::D => Scalar::q_pow(pos as i64, mode),
            Variant::DPrime => -Scalar::q_pow(pos as i64 - 1, mode),
        }
    }
}

/// The differential on `𝔗(𝒜)` determined by its values on `𝒜` and `τ`. At
/// `q = 1` it is taken to be zero.
pub fn tensor_differential(t: &TensorAlgebra, variant: Variant) -> DegreeOneMap {
    let mode = t.mode();
    let dims = t.dims();
    if mode.order() == Some(1) {
        return DegreeOneMap::zero(&dims);
    }
    let top = t.top_degree();
    let blocks = (0..top)
        .map(|n| {
            let coeffs: Vec<Scalar> = (0..=n + 1).map(|p| insertion_coefficient(variant, n, p, mode)).collect();
            let cols = (0..dims[n])
                .map(|i| {
                    let e = Element::basis(i, mode);
                    let mut out = Element::new();
                    for (p, c) in coeffs.iter().enumerate() {
                        out.add_scaled(c, &t.insert_unit(n, &e, p));
                    }
                    out
                })
                .collect();
            LinearMap::new(dims[n + 1], cols)
        })
        .collect();
    DegreeOneMap::new(blocks).expect("tensor differential blocks chain")
}

/// `𝔗(𝒜)` with `d_q` or `d′_q`, laws verified.
#[derive(Clone, Debug)]
pub struct TensorCalculus {
    qda: QDiffAlgebra<TensorAlgebra>,
    variant: Variant,
}

pub fn tensor_calculus(base: &GradedAlgebra, max_degree: usize, mode: QMode, variant: Variant) -> Result<TensorCalculus> {
    if base.mode() != mode {
        return Err(Error::Domain(format!("algebra is over mode {}, calculus requested over {mode}", base.mode())));
    }
    let t = TensorAlgebra::new(base, max_degree)?;
    let d = tensor_differential(&t, variant);
    Ok(TensorCalculus { qda: attach(t, d, mode)?, variant })
}

impl TensorCalculus {
    pub fn algebra(&self) -> &TensorAlgebra {
        self.qda.algebra()
    }

    pub fn d(&self) -> &DegreeOneMap {
        self.qda.d()
    }

    pub fn qda(&self) -> &QDiffAlgebra<TensorAlgebra> {
        &self.qda
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn mode(&self) -> QMode {
        self.qda.mode()
    }

    pub fn top_degree(&self) -> usize {
        self.qda.top_degree()
    }
}

/// `𝔗_{φ,α}(x₀⊗…⊗xₙ) = φ(x₀) α φ(x₁) ⋯ α φ(xₙ)`, degree by degree up to
/// `max_degree`. `phi` maps the base basis into degree 0 of the target.
pub fn extend_hom<B: TruncatedAlgebra>(
    t: &TensorAlgebra,
    target: &B,
    phi: &LinearMap,
    alpha: &Element,
    max_degree: usize,
) -> Result<GradedMap> {
    let top = t.top_degree().min(target.top_degree());
    if max_degree > top {
        return Err(Error::TruncationExceeded { needed: max_degree, top });
    }
    if phi.source_dim() != t.base_dim() || phi.target_dim() != target.dim(0) {
        return Err(Error::DimensionMismatch("φ must map the base algebra into degree 0 of the target".into()));
    }
    let dim = t.base_dim();
    let mut blocks: Vec<LinearMap> = vec![phi.clone()];
    // Images of x₀⊗…⊗x_{n−1}⊗τ-prefixes, reused for the next degree.
    let mut prefixes: Vec<Element> = phi.columns().iter().map(|c| target.mul(0, c, 1, alpha)).collect();
    for n in 1..=max_degree {
        let cols = (0..t.dim(n))
            .map(|i| target.mul(n, &prefixes[i / dim], 0, phi.column(i % dim)))
            .collect::<Vec<_>>();
        if n < max_degree {
            prefixes = cols.iter().map(|c| target.mul(n, c, 1, alpha)).collect();
        }
        blocks.push(LinearMap::new(target.dim(n), cols));
    }
    Ok(GradedMap { shift: 0, blocks })
}

/// Checks `f(st) = f(s)f(t)` on basis pairs with `deg s + deg t ≤ max_degree`.
pub fn check_multiplicative<S: TruncatedAlgebra, B: TruncatedAlgebra>(
    source: &S,
    target: &B,
    f: &GradedMap,
    max_degree: usize,
) -> Result<()> {
    let mode = source.mode();
    for da in 0..=max_degree {
        for db in 0..=max_degree - da {
            for a in 0..source.dim(da) {
                for b in 0..source.dim(db) {
                    let st = source.mul_basis(da, a, db, b);
                    let lhs = f.blocks[da + db].apply(&st);
                    let rhs = target.mul(da, f.blocks[da].column(a), db, f.blocks[db].column(b));
                    if lhs != rhs {
                        return Err(Error::HomomorphismViolation(format!(
                            "f(st) ≠ f(s)f(t) for {} · {}",
                            source.basis_label(da, a),
                            source.basis_label(db, b)
                        )));
                    }
                }
            }
        }
    }
    let _ = mode;
    Ok(())
}

/// Checks `f ∘ d = d ∘ f` on every basis element of degree `< max_degree`.
pub fn check_intertwines<S: TruncatedAlgebra>(
    source: &S,
    d_source: &DegreeOneMap,
    d_target: &DegreeOneMap,
    f: &GradedMap,
    max_degree: usize,
) -> Result<()> {
    for n in 0..max_degree {
        for i in 0..source.dim(n) {
            let lhs = f.blocks[n + 1].apply(d_source.blocks()[n].column(i));
            let rhs = d_target.blocks()[n].apply(f.blocks[n].column(i));
            if lhs != rhs {
                return Err(Error::HomomorphismViolation(format!(
                    "f(dx) ≠ d f(x) for x = {}",
                    source.basis_label(n, i)
                )));
            }
        }
    }
    Ok(())
}

/// A graded subspace of `𝔗(𝒜)`, one echelon form per degree.
#[derive(Clone, Debug)]
pub struct EmbeddedSubalgebra {
    spans: Vec<Echelon>,
    /// The spanning vectors that raised the rank, in insertion order.
    generators: Vec<Vec<Element>>,
}

impl EmbeddedSubalgebra {
    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(Echelon::rank).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.spans.len() - 1
    }

    pub fn span(&self, degree: usize) -> &Echelon {
        &self.spans[degree]
    }

    pub fn generators(&self, degree: usize) -> &[Element] {
        &self.generators[degree]
    }

    /// Canonical reduced basis of one degree.
    pub fn basis(&self, degree: usize) -> Vec<Element> {
        self.spans[degree].reduced_basis()
    }

    pub fn contains(&self, degree: usize, x: &Element) -> bool {
        self.spans[degree].contains(x)
    }

    /// Equality of spans in every degree.
    pub fn same_spans(&self, other: &EmbeddedSubalgebra) -> bool {
        self.spans.len() == other.spans.len()
            && self
                .spans
                .iter()
                .zip(&other.spans)
                .all(|(a, b)| a.rank() == b.rank() && a.contains_space(b))
    }

    /// `d(S^n) ⊂ S^{n+1}`.
    pub fn closed_under(&self, d: &DegreeOneMap) -> bool {
        (0..self.top_degree()).all(|n| self.generators[n].iter().all(|g| {
            d.apply(n, g).map(|dg| self.spans[n + 1].contains(&dg)).unwrap_or(false)
        }))
    }

    /// `S^m S^n ⊂ S^{m+n}` within the window.
    pub fn closed_under_products(&self, t: &TensorAlgebra) -> bool {
        let top = self.top_degree();
        (0..=top).all(|m| {
            (0..=top - m).all(|n| {
                self.generators[m].iter().all(|a| {
                    self.generators[n].iter().all(|b| self.spans[m + n].contains(&t.mul(m, a, n, b)))
                })
            })
        })
    }
}

/// `Ω^n(𝒜)`: tensors killed by multiplying any two consecutive factors.
pub fn omega_classical(t: &TensorAlgebra) -> EmbeddedSubalgebra {
    let mode = t.mode();
    let mut spans = Vec::new();
    let mut generators = Vec::new();
    for n in 0..=t.top_degree() {
        let dim = t.dim(n);
        let basis: Vec<Element> = if n == 0 {
            (0..dim).map(|i| Element::basis(i, mode)).collect()
        } else {
            let lower = t.dim(n - 1);
            let cols = (0..dim)
                .map(|i| {
                    let e = Element::basis(i, mode);
                    let mut col = Element::new();
                    for pos in 0..n {
                        col = col.add(&t.contract(n, pos, &e).map_indices(|k| pos * lower + k));
                    }
                    col
                })
                .collect();
            LinearMap::new(n * lower, cols).kernel(mode)
        };
        spans.push(Echelon::from_vectors(dim, &basis));
        generators.push(basis);
    }
    EmbeddedSubalgebra { spans, generators }
}

/// The subalgebra of `𝔗(𝒜)` generated by `𝒜` under products and `d`:
/// `S⁰ = 𝒜`, `S^n = span{ s · d^k(x) : s ∈ S^{n−k}, 1 ≤ k ≤ n, x ∈ 𝒜 }`.
pub fn omega_q_embedded(calc: &TensorCalculus) -> Result<EmbeddedSubalgebra> {
    let t = calc.algebra();
    let mode = calc.mode();
    let top = calc.top_degree();
    let dim = t.base_dim();
    // d^k(x) for every base basis vector x.
    let mut dk: Vec<Vec<Element>> = vec![(0..dim).map(|i| Element::basis(i, mode)).collect()];
    for k in 1..=top {
        let next = dk[k - 1].iter().map(|v| calc.d().apply(k - 1, v)).collect::<Result<Vec<_>>>()?;
        dk.push(next);
    }
    let mut spans = vec![Echelon::from_vectors(dim, &dk[0])];
    let mut generators = vec![dk[0].clone()];
    for n in 1..=top {
        let mut e = Echelon::new(t.dim(n));
        let mut gens = Vec::new();
        for k in 1..=n {
            for s in &generators[n - k] {
                for x in &dk[k] {
                    if x.is_zero() {
                        continue;
                    }
                    let v = t.mul(n - k, s, k, x);
                    if e.insert(&v) {
                        gens.push(v);
                    }
                }
            }
        }
        spans.push(e);
        generators.push(gens);
    }
    Ok(EmbeddedSubalgebra { spans, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{q_factorial, q_int};

    const G: QMode = QMode::Generic;

    fn c2(max: usize, mode: QMode, v: Variant) -> TensorCalculus {
        tensor_calculus(&fixtures::diagonal(2, mode), max, mode, v).unwrap()
    }

    #[test]
    fn product_concatenates_and_multiplies_inner_factors() {
        let a = fixtures::dual_numbers(G);
        let t = TensorAlgebra::new(&a, 3).unwrap();
        // (1⊗ε)(ε⊗1) = 1⊗ε²⊗1 = 0, (ε⊗1)(1⊗ε) = ε⊗1⊗ε
        let s = t.index(&[0, 1]);
        let r = t.index(&[1, 0]);
        assert!(t.mul_basis(1, s, 1, r).is_zero());
        assert_eq!(t.mul_basis(1, r, 1, s), Element::basis(t.index(&[1, 0, 1]), G));
        assert_eq!(t.dims(), vec![2, 4, 8, 16]);
    }

    #[test]
    fn d_on_generators() {
        let calc = c2(3, G, Variant::D);
        let t = calc.algebra();
        let tau = t.tau();
        let tau2 = t.mul(1, &tau, 1, &tau);
        assert_eq!(calc.d().apply(1, &tau).unwrap(), tau2);
        let x = Element::basis(0, G);
        assert_eq!(calc.d().apply(0, &x).unwrap(), t.universal_derivation(&x));
        let prime = c2(3, G, Variant::DPrime);
        assert_eq!(prime.d().apply(1, &tau).unwrap(), tau2.scale(&-Scalar::q(G)));
    }

    #[test]
    fn powers_of_d_on_tau_and_x() {
        let calc = c2(6, G, Variant::D);
        let t = calc.algebra();
        let tau = t.tau();
        let mut tau_pow = vec![t.unit_element(), tau.clone()];
        for k in 2..=6 {
            let next = t.mul(k - 1, &tau_pow[k - 1], 1, &tau);
            tau_pow.push(next);
        }
        for k in 1..=5 {
            let f = q_factorial(k as u32, G);
            assert_eq!(calc.qda().iterate_d(1, &tau, k).unwrap(), tau_pow[k + 1].scale(&f));
            for x in 0..2 {
                let e = Element::basis(x, G);
                let dx = calc.d().apply(0, &e).unwrap();
                let want = t.mul(k - 1, &tau_pow[k - 1], 1, &dx).scale(&f);
                assert_eq!(calc.qda().iterate_d(0, &e, k).unwrap(), want);
            }
        }
    }

    #[test]
    fn d_squared_of_x_generic() {
        let calc = c2(2, G, Variant::D);
        let t = calc.algebra();
        for x in 0..2 {
            let e = Element::basis(x, G);
            let got = calc.qda().iterate_d(0, &e, 2).unwrap();
            let one = t.unit_element();
            let mut want = Element::new();
            for (i, a) in one.iter() {
                for (j, b) in one.iter() {
                    want.add_term(t.index(&[i, j, x]), &(a * b));
                    want.add_term(t.index(&[i, x, j]), &-(a * b));
                }
            }
            assert_eq!(got, want.scale(&q_int(2, G)));
        }
    }

    #[test]
    fn d_prime_is_nilpotent_at_roots_of_unity() {
        for n in 2..=4u32 {
            let mode = QMode::RootOfUnity(n);
            let calc = c2(n as usize + 2, mode, Variant::DPrime);
            assert_eq!(calc.qda().report().nilpotency_degrees.len(), 3);
        }
    }

    #[test]
    fn trivial_q_gives_zero_differential() {
        let calc = c2(3, QMode::RootOfUnity(1), Variant::D);
        assert!(calc.d().blocks().iter().all(LinearMap::is_zero));
    }

    #[test]
    fn extension_with_tau_is_identity() {
        let a = fixtures::diagonal(2, G);
        let t = TensorAlgebra::new(&a, 3).unwrap();
        let f = extend_hom(&t, &t, &LinearMap::identity(2, G), &t.tau(), 3).unwrap();
        for (n, b) in f.blocks.iter().enumerate() {
            assert_eq!(b, &LinearMap::identity(t.dim(n), G));
        }
        let zero = extend_hom(&t, &t, &LinearMap::identity(2, G), &Element::new(), 3).unwrap();
        assert!(zero.blocks[1..].iter().all(LinearMap::is_zero));
        check_multiplicative(&t, &t, &zero, 3).unwrap();
    }

    #[test]
    fn classical_omega_dims_of_c2() {
        let t = TensorAlgebra::new(&fixtures::diagonal(2, G), 5).unwrap();
        let om = omega_classical(&t);
        assert_eq!(om.dims(), vec![2, 2, 2, 2, 2, 2]);
        for x in 0..2 {
            assert!(om.contains(1, &t.universal_derivation(&Element::basis(x, G))));
        }
    }

    #[test]
    fn embedded_envelope_of_c2_at_cube_roots() {
        let calc = c2(5, QMode::RootOfUnity(3), Variant::D);
        let s = omega_q_embedded(&calc).unwrap();
        assert_eq!(s.dims(), vec![2, 2, 4, 6, 10, 16]);
        assert!(s.closed_under(calc.d()));
        assert!(s.closed_under_products(calc.algebra()));
    }

    #[test]
    fn embedded_at_minus_one_is_classical() {
        let calc = c2(4, QMode::RootOfUnity(2), Variant::D);
        let s = omega_q_embedded(&calc).unwrap();
        assert!(s.same_spans(&omega_classical(calc.algebra())));
    }
}
