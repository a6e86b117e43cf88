//! Sparse exact linear algebra over [`Scalar`].
//!
//! Vectors are sparse maps from coordinate index to a nonzero scalar. Linear
//! maps are stored column-wise (the image of each source basis vector), which
//! is how every map in this crate is naturally produced.
//!
//! Elimination uses a semi-echelon form: each stored row has a distinct
//! leading index with coefficient one and rows are not back-substituted. This
//! keeps rows as sparse as the generators they came from. A canonical reduced
//! echelon basis is produced on demand by [`Echelon::reduced_basis`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::{QMode, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(index: usize, mode: QMode) -> Self {
        let mut v = Self::new();
        v.entries.insert(index, Scalar::one(mode));
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (i, c) in iter {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (i, x) in &other.entries {
            if unit {
                self.add_term(*i, x);
            } else {
                self.add_term(*i, &(c * x));
            }
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in &other.entries {
            out.add_term(*i, x);
        }
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in &other.entries {
            out.add_term(*i, &(-x));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, c * x)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// Applies a coordinate relabelling, accumulating collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in &self.entries {
            out.add_term(f(*i), x);
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in &self.entries {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·e{i}")?;
        }
        Ok(())
    }
}

/// A linear map stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    target_dim: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(target_dim: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < target_dim)));
        LinearMap { target_dim, columns }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap { target_dim, columns: vec![SparseVec::new(); source_dim] }
    }

    pub fn identity(dim: usize, mode: QMode) -> Self {
        LinearMap { target_dim: dim, columns: (0..dim).map(|i| SparseVec::basis(i, mode)).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.target_dim, self.source_dim(), "composition dimension mismatch");
        LinearMap {
            target_dim: self.target_dim,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.target_dim);
        self.columns.iter().filter(|c| e.insert(c)).count()
    }

    pub fn image(&self) -> Echelon {
        let mut e = Echelon::new(self.target_dim);
        for c in &self.columns {
            e.insert(c);
        }
        e
    }

    /// Canonical (reduced echelon) basis of the kernel, in source coordinates.
    pub fn kernel(&self, mode: QMode) -> Vec<SparseVec> {
        let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
        let mut pivots: HashMap<usize, usize> = HashMap::new();
        let mut kernel = Echelon::new(self.source_dim());
        for (j, col) in self.columns.iter().enumerate() {
            let mut img = col.clone();
            let mut combo = SparseVec::basis(j, mode);
            let mut cursor = 0;
            loop {
                let next = img
                    .entries
                    .range(cursor..)
                    .find(|(k, _)| pivots.contains_key(k))
                    .map(|(k, c)| (*k, c.clone()));
                let Some((k, c)) = next else { break };
                let (row_img, row_combo) = &rows[pivots[&k]];
                let f = -c;
                img.add_scaled(&f, row_img);
                combo.add_scaled(&f, row_combo);
                cursor = k + 1;
            }
            match img.leading() {
                None => {
                    kernel.insert(&combo);
                }
                Some((p, lead)) => {
                    let inv = lead.inv().unwrap();
                    pivots.insert(p, rows.len());
                    rows.push((img.scale(&inv), combo.scale(&inv)));
                }
            }
        }
        kernel.reduced_basis()
    }
}

/// A subspace held in semi-echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(dim: usize, vs: I) -> Self {
        let mut e = Echelon::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Remainder of `v` after eliminating every pivot it meets.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        r
    }

    fn reduce_in_place(&self, r: &mut SparseVec) {
        if self.rows.is_empty() {
            return;
        }
        let mut cursor = 0;
        loop {
            let next = r.entries.range(cursor..).find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            r.add_scaled(&-c, &self.rows[self.pivots[&k]]);
            cursor = k + 1;
        }
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        match r.leading() {
            None => false,
            Some((p, lead)) => {
                let inv = lead.inv().unwrap();
                let r = r.scale(&inv);
                self.pivots.insert(p, self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Whether every row of `other` lies in this subspace.
    pub fn contains_space(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Unique reduced row echelon basis, ordered by pivot index.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.sort_unstable();
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        // back-substitute from the largest pivot down
        for &p in order.iter().rev() {
            let mut r = self.rows[self.pivots[&p]].clone();
            let hits: Vec<(usize, Scalar)> = r
                .iter()
                .filter(|(k, _)| *k != p && rows.contains_key(k))
                .map(|(k, c)| (k, c.clone()))
                .collect();
            for (k, c) in hits {
                r.add_scaled(&-c, &rows[&k]);
            }
            rows.insert(p, r);
        }
        rows.into_values().collect()
    }

    /// Coordinates of `v` with respect to the reduced basis, if `v` lies in the span.
    pub fn coordinates(&self, reduced: &[SparseVec], v: &SparseVec) -> Option<SparseVec> {
        let mut r = v.clone();
        let mut coords = SparseVec::new();
        for (idx, row) in reduced.iter().enumerate() {
            let (p, _) = row.leading().expect("reduced basis rows are nonzero");
            if let Some(c) = r.get(p).cloned() {
                r.add_scaled(&-c.clone(), row);
                coords.add_term(idx, &c);
            }
        }
        r.is_zero().then_some(coords)
    }
}

/// Solves for coordinates in an arbitrary (independent) list of vectors by
/// tracking combinations through elimination.
pub struct CoordinateSolver {
    rows: Vec<(SparseVec, SparseVec)>,
    pivots: HashMap<usize, usize>,
    independent: bool,
}

impl CoordinateSolver {
    pub fn new(vectors: &[SparseVec], mode: QMode) -> Self {
        let mut s = CoordinateSolver { rows: Vec::new(), pivots: HashMap::new(), independent: true };
        for (j, v) in vectors.iter().enumerate() {
            let (img, combo) = s.reduce_pair(v.clone(), SparseVec::basis(j, mode));
            match img.leading() {
                None => s.independent = false,
                Some((p, lead)) => {
                    let inv = lead.inv().unwrap();
                    s.pivots.insert(p, s.rows.len());
                    s.rows.push((img.scale(&inv), combo.scale(&inv)));
                }
            }
        }
        s
    }

    fn reduce_pair(&self, mut img: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0;
        loop {
            let next = img.entries.range(cursor..).find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let (ri, rc) = &self.rows[self.pivots[&k]];
            let f = -c;
            img.add_scaled(&f, ri);
            combo.add_scaled(&f, rc);
            cursor = k + 1;
        }
        (img, combo)
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    /// `Some(c)` with `Σ c_j v_j = target` when `target` is in the span.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let (img, combo) = self.reduce_pair(target.clone(), SparseVec::new());
        img.is_zero().then(|| combo.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: QMode = QMode::RootOfUnity(3);

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, c)| (i, Scalar::from_int(c, M))))
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = v(&[(0, 1), (2, 3)]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&v(&[(2, -3)])), v(&[(0, 1)]));
    }

    #[test]
    fn rank_and_kernel() {
        // columns e0+e1, e1+e2, e0-e2 are dependent: c0 - c1 - c2 = 0
        let m = LinearMap::new(3, vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel(M);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
        assert_eq!(k[0], v(&[(0, 1), (1, -1), (2, -1)]));
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let a = Echelon::from_vectors(3, [&v(&[(0, 1), (1, 2)]), &v(&[(1, 1), (2, 1)])]);
        let b = Echelon::from_vectors(3, [&v(&[(0, 1), (1, 3), (2, 1)]), &v(&[(0, 2), (1, 2), (2, -2)])]);
        assert_eq!(a.reduced_basis(), b.reduced_basis());
        let basis = a.reduced_basis();
        let coords = a.coordinates(&basis, &v(&[(0, 2), (1, 4)])).unwrap();
        assert_eq!(coords, v(&[(0, 2), (1, 4)]));
        assert!(a.coordinates(&basis, &v(&[(2, 1)])).is_none());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let m = LinearMap::zero(3, 2);
        assert_eq!(m.kernel(M).len(), 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn solver_recovers_combinations() {
        let vs = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        let s = CoordinateSolver::new(&vs, M);
        assert!(s.is_independent());
        assert_eq!(s.solve(&v(&[(0, 2), (1, 5)])), Some(v(&[(0, 2), (1, 3)])));
        assert_eq!(s.solve(&v(&[(2, 1)])), None);
    }
}
