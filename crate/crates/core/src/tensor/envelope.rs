//! The universal q-differential envelope `Ω_q(𝒜) = 𝒜 ⊗ T(ℰ)`, built
//! abstractly from words in the letters `d^k(x)`, its canonical map into any
//! q-differential algebra, and the comparison with the copy inside `𝔗(𝒜)`.

use std::collections::HashMap;

use serde::Serialize;

use super::{check_intertwines, check_multiplicative, omega_q_embedded, tensor_calculus, Variant};
use crate::cochain::BilinearProduct;
use crate::error::{Error, Result};
use crate::graded::{DegreeOneMap, Element, GradedAlgebra, GradedMap, TruncatedAlgebra};
use crate::linalg::{CoordinateSolver, Echelon, LinearMap};
use crate::qdla::{attach, QDiffAlgebra};
use crate::scalar::{q_binomial, QMode, Scalar};

/// A letter `d^level(x_j)` with `x_j` the `j`-th vector of the quotient
/// transversal.
pub type Letter = (usize, usize);
pub type Word = Vec<Letter>;

/// `𝒜 ⊗ T(ℰ)` truncated at `top`. Degree `n` has basis `(word, a)` indexed
/// `word * dim 𝒜 + a`, with the words of weight `n` in a fixed order.
#[derive(Clone, Debug)]
pub struct EnvelopeAbstract {
    base: GradedAlgebra,
    product: BilinearProduct,
    unit: Element,
    top: usize,
    max_level: usize,
    /// Base basis indices completing the unit to a basis of `𝒜`.
    transversal: Vec<usize>,
    /// Class of each base basis vector modulo `ℂ1`, in transversal coordinates.
    classes: Vec<Element>,
    words: Vec<Vec<Word>>,
    word_index: Vec<HashMap<Word, usize>>,
    /// `right[n][w * dim + b] = (1·w)·b`, in degree `n`.
    right: Vec<Vec<Element>>,
}

/// Compositions of `n` with parts in `1..=max`, in lexicographic order.
pub fn compositions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=max.min(n) {
        for mut rest in compositions(n - first, max) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `dim 𝒜 · Σ (dim 𝒜 − 1)^r` over compositions `(k₁..k_r)` of `n` with parts ≤ `max`.
pub fn free_module_dim(base_dim: usize, n: usize, max: usize) -> usize {
    base_dim * compositions(n, max).iter().map(|c| (base_dim - 1).pow(c.len() as u32)).sum::<usize>()
}

/// Highest letter level: `N − 1`, or the window in generic mode.
pub fn level_cap(mode: QMode, top: usize) -> usize {
    match mode.order() {
        Some(n) => (n as usize).saturating_sub(1),
        None => top,
    }
}

impl EnvelopeAbstract {
    pub fn new(base: &GradedAlgebra, top: usize) -> Result<Self> {
        let product = BilinearProduct::from_algebra(base)?;
        let mode = product.mode();
        let unit = product
            .unit()
            .cloned()
            .ok_or_else(|| Error::Domain("the envelope needs a unital algebra".into()))?;
        let dim = product.dim();
        let mut ech = Echelon::new(dim);
        ech.insert(&unit);
        let transversal: Vec<usize> = (0..dim).filter(|&i| ech.insert(&Element::basis(i, mode))).collect();
        let mut frame = vec![unit.clone()];
        frame.extend(transversal.iter().map(|&i| Element::basis(i, mode)));
        let solver = CoordinateSolver::new(&frame, mode);
        let classes = (0..dim)
            .map(|i| {
                let c = solver.solve(&Element::basis(i, mode)).expect("frame is a basis");
                let mut out = Element::new();
                for (k, v) in c.iter().filter(|(k, _)| *k > 0) {
                    out.add_term(k - 1, v);
                }
                out
            })
            .collect();

        let max_level = level_cap(mode, top);
        let mut words = Vec::with_capacity(top + 1);
        let mut word_index = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut ws: Vec<Word> = Vec::new();
            let comps = if max_level == 0 && n > 0 { Vec::new() } else { compositions(n, max_level.max(1)) };
            for comp in comps {
                let mut acc: Vec<Word> = vec![vec![]];
                for &k in &comp {
                    acc = acc
                        .into_iter()
                        .flat_map(|w| {
                            (0..transversal.len()).map(move |j| {
                                let mut w = w.clone();
                                w.push((k, j));
                                w
                            })
                        })
                        .collect();
                }
                ws.extend(acc);
            }
            word_index.push(ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect());
            words.push(ws);
        }

        let mut env = EnvelopeAbstract {
            base: base.clone(),
            product,
            unit,
            top,
            max_level,
            transversal,
            classes,
            words,
            word_index,
            right: Vec::new(),
        };
        env.build_right()?;
        Ok(env)
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn base_dim(&self) -> usize {
        self.product.dim()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn words(&self, degree: usize) -> &[Word] {
        &self.words[degree]
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Local index of `(word, a)`; the word's weight is its degree.
    pub fn index(&self, w: &[Letter], a: usize) -> Option<usize> {
        let n: usize = w.iter().map(|l| l.0).sum();
        self.word_index.get(n)?.get(w).map(|wi| wi * self.base_dim() + a)
    }

    /// Class of `x ∈ 𝒜` modulo `ℂ1`.
    fn class_of(&self, x: &Element) -> Element {
        let mut out = Element::new();
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.classes[i]);
        }
        out
    }

    /// `1 · w`, with the unit expanded in the base basis.
    fn unit_word(&self, w: &[Letter]) -> Element {
        match self.index(w, 0) {
            Some(i0) => self.unit.map_indices(|a| i0 + a),
            None => Element::new(),
        }
    }

    /// Appends the letter `d^k(x)` (by class) to every term of `x` in degree `n`.
    fn append(&self, n: usize, x: &Element, k: usize, class: &Element) -> Element {
        let mut out = Element::new();
        if k > self.max_level || n + k > self.top {
            return out;
        }
        let dim = self.base_dim();
        for (i, c) in x.iter() {
            let (wi, a) = (i / dim, i % dim);
            for (j, cj) in class.iter() {
                let mut w = self.words[n][wi].clone();
                w.push((k, j));
                let idx = self.index(&w, a).expect("appended word is in the window");
                out.add_term(idx, &(c * cj));
            }
        }
        out
    }

    /// `(1·w)·b` by peeling the last letter:
    /// `(w′ d^k x) b = w′ d^k(xb) − Σ_{p=1}^{k−1} [k p] w′ d^{k−p}(x) d^p(b) − (w′ x) d^k(b)`.
    fn build_right(&mut self) -> Result<()> {
        let mode = self.product.mode();
        let dim = self.base_dim();
        let mut right: Vec<Vec<Element>> = Vec::with_capacity(self.top + 1);
        right.push((0..dim).map(|b| Element::basis(b, mode)).collect());
        for n in 1..=self.top {
            let mut table = Vec::with_capacity(self.words[n].len() * dim);
            for w in &self.words[n] {
                let (&(k, j), prefix) = w.split_last().expect("positive weight");
                let m = n - k;
                let x = self.transversal[j];
                let p_idx = self.word_index[m][prefix];
                let unit_prefix = self.unit_word(prefix);
                for b in 0..dim {
                    let xb = self.product.basis_product(x, b);
                    let mut v = self.append(m, &unit_prefix, k, &self.class_of(xb));
                    for p in 1..k {
                        let c = q_binomial(k as u32, p as u32, mode)?;
                        if c.is_zero() {
                            continue;
                        }
                        let mid = self.append(m, &unit_prefix, k - p, &Element::basis(j, mode));
                        let term = self.append(m + k - p, &mid, p, &self.classes[b]);
                        v.add_scaled(&-c, &term);
                    }
                    let wx = &right[m][p_idx * dim + x];
                    v = v.sub(&self.append(m, wx, k, &self.classes[b]));
                    table.push(v);
                }
            }
            right.push(table);
        }
        self.right = right;
        Ok(())
    }

    /// `d(a·w) = 1·d(a)·w + a·Σᵢ q^{k₁+…+k_{i−1}} (w with kᵢ raised by one)`.
    pub fn differential(&self) -> DegreeOneMap {
        let mode = self.product.mode();
        let dim = self.base_dim();
        let dims = self.dims();
        DegreeOneMap::from_fn(&dims, |n, i| {
            let (wi, a) = (i / dim, i % dim);
            let w = &self.words[n][wi];
            let mut out = Element::new();
            for (j, c) in self.classes[a].iter() {
                let mut w2 = vec![(1, j)];
                w2.extend_from_slice(w);
                out.add_scaled(c, &self.unit_word(&w2));
            }
            let mut shift = 0;
            for (pos, &(k, j)) in w.iter().enumerate() {
                if k < self.max_level {
                    let mut w2 = w.clone();
                    w2[pos] = (k + 1, j);
                    if let Some(idx) = self.index(&w2, a) {
                        out.add_term(idx, &Scalar::q_pow(shift as i64, mode));
                    }
                }
                shift += k;
            }
            out
        })
    }
}

impl TruncatedAlgebra for EnvelopeAbstract {
    fn mode(&self) -> QMode {
        self.product.mode()
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn dim(&self, degree: usize) -> usize {
        self.words.get(degree).map_or(0, |w| w.len() * self.base_dim())
    }

    fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> Element {
        let mut out = Element::new();
        if da + db > self.top {
            return out;
        }
        let dim = self.base_dim();
        let (wa, xa) = (a / dim, a % dim);
        let (wb, xb) = (b / dim, b % dim);
        let tail = &self.words[db][wb];
        for (i, c) in self.right[da][wa * dim + xb].iter() {
            let (wi, y) = (i / dim, i % dim);
            let mut w = self.words[da][wi].clone();
            w.extend_from_slice(tail);
            let base = self.word_index[da + db][&w] * dim;
            for (z, pc) in self.product.basis_product(xa, y).iter() {
                out.add_term(base + z, &(c * pc));
            }
        }
        out
    }

    fn unit(&self) -> Option<Element> {
        Some(self.unit.clone())
    }

    fn basis_label(&self, degree: usize, index: usize) -> String {
        let dim = self.base_dim();
        let mut s = self.base.label(index % dim).to_string();
        for &(k, j) in &self.words[degree][index / dim] {
            s.push_str(&format!(" d^{k}({})", self.base.label(self.transversal[j])));
        }
        s
    }
}

/// `Ω_q(𝒜)` with its differential, laws verified.
pub fn envelope_abstract(base: &GradedAlgebra, max_degree: usize, mode: QMode) -> Result<QDiffAlgebra<EnvelopeAbstract>> {
    if base.mode() != mode {
        return Err(Error::Domain(format!("algebra is over mode {}, envelope requested over {mode}", base.mode())));
    }
    let env = EnvelopeAbstract::new(base, max_degree)?;
    let d = env.differential();
    attach(env, d, mode)
}

/// The extension `φ̄(a·d^{k₁}x₁⋯d^{k_r}x_r) = φ(a)·d^{k₁}φ(x₁)⋯d^{k_r}φ(x_r)`,
/// up to `max_degree`. `phi` maps the base basis into degree 0 of the target.
pub fn universal_extension<B: TruncatedAlgebra>(
    env: &QDiffAlgebra<EnvelopeAbstract>,
    target: &QDiffAlgebra<B>,
    phi: &LinearMap,
    max_degree: usize,
) -> Result<GradedMap> {
    let e = env.algebra();
    let t = target.algebra();
    if env.mode() != target.mode() {
        return Err(Error::Domain("envelope and target use different modes".into()));
    }
    let top = e.top_degree().min(t.top_degree());
    if max_degree > top {
        return Err(Error::TruncationExceeded { needed: max_degree, top });
    }
    if phi.source_dim() != e.base_dim() || phi.target_dim() != t.dim(0) {
        return Err(Error::DimensionMismatch("φ must map the base algebra into degree 0 of the target".into()));
    }
    let dim = e.base_dim();
    // d^k φ(x_j) for each transversal vector
    let dphi: Vec<Vec<Element>> = (0..=max_degree)
        .map(|k| {
            e.transversal
                .iter()
                .map(|&x| target.iterate_d(0, phi.column(x), k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let unit = t.unit().ok_or_else(|| Error::Domain("target must be unital".into()))?;
    let mut prods: Vec<Vec<Element>> = Vec::with_capacity(max_degree + 1);
    prods.push(vec![unit]);
    let mut blocks = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        if n > 0 {
            let level: Vec<Element> = e.words[n]
                .iter()
                .map(|w| {
                    let (&(k, j), prefix) = w.split_last().expect("positive weight");
                    let p = &prods[n - k][e.word_index[n - k][prefix]];
                    t.mul(n - k, p, k, &dphi[k][j])
                })
                .collect();
            prods.push(level);
        }
        let cols = (0..e.dim(n)).map(|i| t.mul(0, phi.column(i % dim), n, &prods[n][i / dim])).collect();
        blocks.push(LinearMap::new(t.dim(n), cols));
    }
    Ok(GradedMap { shift: 0, blocks })
}

/// Checks that an extension commutes with `d` and is multiplicative.
pub fn verify_extension<B: TruncatedAlgebra>(
    env: &QDiffAlgebra<EnvelopeAbstract>,
    target: &QDiffAlgebra<B>,
    f: &GradedMap,
) -> Result<()> {
    let max = f.blocks.len() - 1;
    check_intertwines(env.algebra(), env.d(), target.d(), f, max)?;
    check_multiplicative(env.algebra(), target.algebra(), f, max)
}

/// Comparison of the abstract envelope with the subalgebra of `𝔗(𝒜)` that
/// `𝒜` generates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub mode: String,
    pub max_degree: usize,
    pub abstract_dims: Vec<usize>,
    pub embedded_dims: Vec<usize>,
    pub formula_dims: Vec<usize>,
    /// Rank of the canonical map in each degree.
    pub canonical_ranks: Vec<usize>,
    /// Canonical image lands inside the embedded span in each degree.
    pub image_in_span: Vec<bool>,
    pub isomorphic: bool,
}

pub fn compare_envelopes(base: &GradedAlgebra, max_degree: usize, mode: QMode) -> Result<EnvelopeReport> {
    let env = envelope_abstract(base, max_degree, mode)?;
    let calc = tensor_calculus(base, max_degree, mode, Variant::D)?;
    let embedded = omega_q_embedded(&calc)?;
    let dim = env.algebra().base_dim();
    let f = universal_extension(&env, calc.qda(), &LinearMap::identity(dim, mode), max_degree)?;
    let cap = level_cap(mode, max_degree);
    let formula_dims = (0..=max_degree)
        .map(|n| if n > 0 && cap == 0 { 0 } else { free_module_dim(dim, n, cap.max(1)) })
        .collect();
    let abstract_dims = env.algebra().dims();
    let embedded_dims = embedded.dims();
    let mut canonical_ranks = Vec::new();
    let mut image_in_span = Vec::new();
    for (n, b) in f.blocks.iter().enumerate() {
        canonical_ranks.push(b.rank());
        image_in_span.push(b.columns().iter().all(|c| embedded.contains(n, c)));
    }
    let isomorphic = abstract_dims == embedded_dims
        && abstract_dims == canonical_ranks
        && image_in_span.iter().all(|&b| b);
    Ok(EnvelopeReport {
        mode: mode.to_string(),
        max_degree,
        abstract_dims,
        embedded_dims,
        formula_dims,
        canonical_ranks,
        image_in_span,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn composition_counts() {
        assert_eq!((0..6).map(|n| compositions(n, 2).len()).collect::<Vec<_>>(), vec![1, 1, 2, 3, 5, 8]);
        assert_eq!((0..6).map(|n| free_module_dim(2, n, 2)).collect::<Vec<_>>(), vec![2, 2, 4, 6, 10, 16]);
        assert_eq!(free_module_dim(3, 5, 3), 456);
    }

    #[test]
    fn degree_zero_and_first_differential() {
        let m = QMode::RootOfUnity(3);
        let a = fixtures::diagonal(2, m);
        let env = envelope_abstract(&a, 3, m).unwrap();
        let e = env.algebra();
        assert_eq!(e.dims(), vec![2, 2, 4, 6]);
        assert_eq!(e.transversal(), &[0]);
        // d(p1) = 1·d(p1)
        let d = env.d().apply(0, &Element::basis(0, m)).unwrap();
        assert_eq!(d, e.unit_word(&[(1, 0)]));
    }

    #[test]
    fn first_order_right_rule() {
        // d(x)b = d(xb) − x d(b)
        let m = QMode::Generic;
        let a = fixtures::dual_numbers(m);
        let env = envelope_abstract(&a, 2, m).unwrap();
        let e = env.algebra();
        for x in 0..2 {
            for b in 0..2 {
                let ex = Element::basis(x, m);
                let eb = Element::basis(b, m);
                let dx = env.d().apply(0, &ex).unwrap();
                let lhs = e.mul(1, &dx, 0, &eb);
                let xb = e.mul(0, &ex, 0, &eb);
                let rhs = env.d().apply(0, &xb).unwrap().sub(&e.mul(0, &ex, 1, &env.d().apply(0, &eb).unwrap()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identity_extension_is_identity() {
        let m = QMode::RootOfUnity(3);
        let a = fixtures::diagonal(2, m);
        let env = envelope_abstract(&a, 3, m).unwrap();
        let f = universal_extension(&env, &env, &LinearMap::identity(2, m), 3).unwrap();
        for (n, b) in f.blocks.iter().enumerate() {
            assert_eq!(b, &LinearMap::identity(env.algebra().dim(n), m));
        }
        verify_extension(&env, &env, &f).unwrap();
    }

    #[test]
    fn abstract_matches_embedded_for_c2() {
        let r = compare_envelopes(&fixtures::diagonal(2, QMode::RootOfUnity(3)), 5, QMode::RootOfUnity(3)).unwrap();
        assert_eq!(r.abstract_dims, vec![2, 2, 4, 6, 10, 16]);
        assert!(r.isomorphic, "{r:?}");
        assert_eq!(r.formula_dims, r.abstract_dims);
    }

    #[test]
    fn generic_envelope_of_dual_numbers() {
        let m = QMode::Generic;
        let r = compare_envelopes(&fixtures::dual_numbers(m), 3, m).unwrap();
        assert!(r.isomorphic, "{r:?}");
        assert_eq!(r.abstract_dims, vec![2, 2, 4, 8]);
    }
}
