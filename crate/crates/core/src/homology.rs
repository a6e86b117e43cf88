//! Generalized cohomology of N-complexes, `H^(k) = ker d^k / Im d^{N−k}`,
//! the six-term hexagons relating the `H^(k)`, and their graded unrolling
//! into long sequences.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graded::{DegreeOneMap, Element};
use crate::linalg::{CoordinateSolver, Echelon, LinearMap};
use crate::scalar::{QMode, Scalar};

/// A truncated ℕ-graded space `E^0 … E^top` with a degree-one `d` such that
/// `d^N` vanishes wherever its N-step orbit stays inside the window.
#[derive(Clone, Debug)]
pub struct ComplexView {
    dims: Vec<usize>,
    d: DegreeOneMap,
    order: usize,
    mode: QMode,
}

impl ComplexView {
    pub fn new(dims: Vec<usize>, d: DegreeOneMap, order: usize, mode: QMode) -> Result<Self> {
        if order < 2 {
            return Err(Error::Domain(format!("an N-complex needs N >= 2, got {order}")));
        }
        if dims.is_empty() {
            return Err(Error::DimensionMismatch("empty window".into()));
        }
        if d.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees but {} differential blocks",
                dims.len(),
                d.len()
            )));
        }
        for (n, b) in d.blocks().iter().enumerate() {
            if b.source_dim() != dims[n] || b.target_dim() != dims[n + 1] {
                return Err(Error::DimensionMismatch(format!("block {n} does not match the degree dimensions")));
            }
        }
        let view = ComplexView { dims, d, order, mode };
        view.check_nilpotent()?;
        Ok(view)
    }

    fn check_nilpotent(&self) -> Result<()> {
        let top = self.top();
        for n in 0..=top.saturating_sub(self.order) {
            if n + self.order > top {
                break;
            }
            let p = self.d.power(n, self.order, self.mode)?;
            if let Some((i, img)) = p.columns().iter().enumerate().find(|(_, c)| !c.is_zero()) {
                return Err(Error::NilpotencyViolation { degree: n, index: i, image: img.clone() });
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn d(&self) -> &DegreeOneMap {
        &self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    /// The whole window as one space, `d` acting blockwise (and by zero on the
    /// top degree). This is an honest N-complex in its own right.
    pub fn total(&self) -> UngradedComplex {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = self.dims.iter().sum();
        let mut cols = Vec::with_capacity(total);
        for (n, &dim) in self.dims.iter().enumerate() {
            for i in 0..dim {
                cols.push(match self.d.block(n) {
                    Some(b) => b.column(i).map_indices(|k| offsets[n + 1] + k),
                    None => Element::new(),
                });
            }
        }
        UngradedComplex { d: LinearMap::new(total, cols), order: self.order, mode: self.mode }
    }
}

/// A single space with a nilpotent endomorphism, `d^N = 0`.
#[derive(Clone, Debug)]
pub struct UngradedComplex {
    d: LinearMap,
    order: usize,
    mode: QMode,
}

impl UngradedComplex {
    pub fn new(d: LinearMap, order: usize, mode: QMode) -> Result<Self> {
        if d.source_dim() != d.target_dim() {
            return Err(Error::DimensionMismatch("not an endomorphism".into()));
        }
        if order < 2 {
            return Err(Error::Domain(format!("an N-complex needs N >= 2, got {order}")));
        }
        let c = UngradedComplex { d, order, mode };
        let p = c.power(order);
        if let Some((i, img)) = p.columns().iter().enumerate().find(|(_, c)| !c.is_zero()) {
            return Err(Error::NilpotencyViolation { degree: 0, index: i, image: img.clone() });
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.d.source_dim()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn power(&self, k: usize) -> LinearMap {
        let mut acc = LinearMap::identity(self.dim(), self.mode);
        for _ in 0..k {
            acc = self.d.compose(&acc);
        }
        acc
    }
}

/// What the cohomology machinery needs from either kind of complex. Degrees
/// are signed so that spaces below zero can be named (they are zero).
trait NComplex: Sync {
    fn order(&self) -> usize;
    fn mode(&self) -> QMode;
    fn dim(&self, n: isize) -> usize;
    /// Degree from which `d^j` lands in degree `n`.
    fn source_of(&self, n: isize, j: usize) -> isize;
    /// Whether `d^j` out of degree `n` is known inside the window.
    fn reaches(&self, n: isize, j: usize) -> bool;
    fn power(&self, n: isize, j: usize) -> LinearMap;
}

impl NComplex for ComplexView {
    fn order(&self) -> usize {
        self.order
    }
    fn mode(&self) -> QMode {
        self.mode
    }
    fn dim(&self, n: isize) -> usize {
        usize::try_from(n).ok().and_then(|n| self.dims.get(n)).copied().unwrap_or(0)
    }
    fn source_of(&self, n: isize, j: usize) -> isize {
        n - j as isize
    }
    fn reaches(&self, n: isize, j: usize) -> bool {
        n < 0 || n as usize + j <= self.top()
    }
    fn power(&self, n: isize, j: usize) -> LinearMap {
        if n < 0 {
            return LinearMap::zero(0, self.dim(n + j as isize));
        }
        self.d.power(n as usize, j, self.mode).expect("power inside the window")
    }
}

impl NComplex for UngradedComplex {
    fn order(&self) -> usize {
        self.order
    }
    fn mode(&self) -> QMode {
        self.mode
    }
    fn dim(&self, _: isize) -> usize {
        self.dim()
    }
    fn source_of(&self, n: isize, _: usize) -> isize {
        n
    }
    fn reaches(&self, _: isize, _: usize) -> bool {
        true
    }
    fn power(&self, _: isize, j: usize) -> LinearMap {
        UngradedComplex::power(self, j)
    }
}

/// `H^(k),n` held as representatives together with the image it is taken modulo.
struct Quotient {
    n: isize,
    kernel_dim: usize,
    image_rank: usize,
    reps: Vec<Element>,
    solver: CoordinateSolver,
}

impl Quotient {
    fn compute<C: NComplex + ?Sized>(c: &C, k: usize, n: isize) -> Quotient {
        let order = c.order();
        let mode = c.mode();
        let dim = c.dim(n);
        let kernel = if k == 0 || dim == 0 { Vec::new() } else { c.power(n, k).kernel(mode) };
        let src = c.source_of(n, order - k);
        let mut image = Echelon::new(dim);
        if c.dim(src) > 0 {
            for col in c.power(src, order - k).columns() {
                image.insert(col);
            }
        }
        let image_rank = image.rank();
        let mut reps = Vec::new();
        for v in &kernel {
            if image.insert(v) {
                reps.push(v.clone());
            }
        }
        let mut gens: Vec<Element> = image.rows()[..image_rank].to_vec();
        gens.extend(reps.iter().cloned());
        let solver = CoordinateSolver::new(&gens, mode);
        Quotient { n, kernel_dim: kernel.len(), image_rank, reps, solver }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class of a kernel vector in representative coordinates.
    fn class_of(&self, v: &Element) -> Element {
        let combo = self.solver.solve(v).expect("vector lies in the kernel");
        let skip = self.image_rank;
        let mut out = Element::new();
        for (i, c) in combo.iter() {
            if i >= skip {
                out.add_term(i - skip, c);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedCohomology {
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub kernel_dim: usize,
    pub image_rank: usize,
    /// Whether the whole `N`-step neighbourhood of `n` lies in the window.
    pub stable: bool,
    #[serde(skip)]
    pub representatives: Vec<Element>,
}

/// `H^(k),n = {x ∈ E^n | d^k x = 0} / d^{N−k}(E^{n+k−N})`.
pub fn cohomology(view: &ComplexView, k: usize, n: usize) -> Result<GeneralizedCohomology> {
    if k == 0 || k >= view.order {
        return Err(Error::IllFormed(format!("k = {k} outside 1..{}", view.order - 1)));
    }
    if n + k > view.top() {
        return Err(Error::WindowTooSmall { needed: n + k, top: view.top() });
    }
    let q = Quotient::compute(view, k, n as isize);
    Ok(GeneralizedCohomology {
        k,
        n,
        dim: q.dim(),
        kernel_dim: q.kernel_dim,
        image_rank: q.image_rank,
        stable: n + view.order <= view.top(),
        representatives: q.reps,
    })
}

/// Every computable `H^(k),n`, ordered by `(n, k)`.
pub fn cohomology_table(view: &ComplexView) -> Vec<GeneralizedCohomology> {
    let cells: Vec<(usize, usize)> = (0..=view.top())
        .flat_map(|n| (1..view.order).map(move |k| (n, k)))
        .filter(|&(n, k)| n + k <= view.top())
        .collect();
    cells.par_iter().map(|&(n, k)| cohomology(view, k, n).expect("cell inside window")).collect()
}

/// Rank–nullity bookkeeping in one degree: `dim ker d^k + rank d^k = dim E^n`.
pub fn rank_nullity_holds(view: &ComplexView, k: usize, n: usize) -> Result<bool> {
    if n + k > view.top() {
        return Err(Error::WindowTooSmall { needed: n + k, top: view.top() });
    }
    let p = view.d.power(n, k, view.mode)?;
    Ok(p.kernel(view.mode).len() + p.rank() == view.dims[n])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `[i^j]`, induced by `ker d^k ⊂ ker d^{k+j}`.
    Inclusion(usize),
    /// `[d^j]`.
    Differential(usize),
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Inclusion(j) => write!(f, "[i^{j}]"),
            MapKind::Differential(j) => write!(f, "[d^{j}]"),
        }
    }
}

impl Serialize for MapKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    /// The `k` of `H^(k)`.
    pub class: usize,
    /// Degree of the node in a graded sequence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<isize>,
    pub dim: usize,
    pub outgoing: MapKind,
    pub incoming_rank: usize,
    pub outgoing_kernel: usize,
    pub composite_zero: bool,
    /// `None` when a neighbour falls outside the window.
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexagonReport {
    pub l: usize,
    pub m: usize,
    pub order: usize,
    pub nodes: Vec<NodeReport>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub l: usize,
    pub m: usize,
    pub p: usize,
    pub order: usize,
    pub nodes: Vec<NodeReport>,
    pub tested: usize,
    pub untested: usize,
    /// Exactness at every tested node.
    pub exact: bool,
}

fn check_lm(order: usize, l: usize, m: usize) -> Result<()> {
    if l == 0 || m == 0 || l + m > order {
        return Err(Error::IllFormed(format!("(l, m) = ({l}, {m}) needs l, m >= 1 and l + m <= {order}")));
    }
    Ok(())
}

/// The six positions of the hexagon: class of the node and the map leaving it.
fn hexagon_pattern(order: usize, l: usize, m: usize) -> [(usize, MapKind, usize); 6] {
    let c = order - l - m;
    // (class, outgoing map, degree offset of the node within one period)
    [
        (m, MapKind::Inclusion(l), 0),
        (l + m, MapKind::Differential(m), 0),
        (l, MapKind::Inclusion(c), m),
        (order - m, MapKind::Differential(l), m),
        (c, MapKind::Inclusion(m), l + m),
        (order - l, MapKind::Differential(c), l + m),
    ]
}

/// Matrix of the map induced on representatives.
fn induced<C: NComplex + ?Sized>(c: &C, src: &Quotient, dst: &Quotient, kind: MapKind) -> LinearMap {
    let cols = src
        .reps
        .iter()
        .map(|r| {
            let v = match kind {
                MapKind::Inclusion(_) => r.clone(),
                MapKind::Differential(j) => c.power(src.n, j).apply(r),
            };
            dst.class_of(&v)
        })
        .collect();
    LinearMap::new(dst.dim(), cols)
}

struct Node {
    class: usize,
    degree: isize,
    outgoing: MapKind,
}

fn computable<C: NComplex + ?Sized>(c: &C, node: &Node) -> bool {
    c.reaches(node.degree, node.class)
}

/// Exactness of a cyclic or linear chain of nodes; `cyclic` joins the ends.
fn run_chain<C: NComplex + ?Sized>(c: &C, nodes: &[Node], cyclic: bool, graded: bool) -> Vec<NodeReport> {
    let spaces: Vec<Option<Quotient>> =
        nodes.par_iter().map(|n| computable(c, n).then(|| Quotient::compute(c, n.class, n.degree))).collect();
    let len = nodes.len();
    // outgoing[i]: matrix of the map from node i to node i+1
    let outgoing: Vec<Option<LinearMap>> = (0..len)
        .into_par_iter()
        .map(|i| {
            let j = if i + 1 == len {
                if !cyclic {
                    return None;
                }
                0
            } else {
                i + 1
            };
            match (&spaces[i], &spaces[j]) {
                (Some(a), Some(b)) => Some(induced(c, a, b, nodes[i].outgoing)),
                _ => None,
            }
        })
        .collect();
    (0..len)
        .map(|i| {
            let prev = if i == 0 { cyclic.then(|| len - 1) } else { Some(i - 1) };
            let incoming = prev.and_then(|p| outgoing[p].as_ref());
            let out = outgoing[i].as_ref();
            let dim = spaces[i].as_ref().map_or(0, Quotient::dim);
            let (incoming_rank, outgoing_kernel, composite_zero, exact) = match (incoming, out) {
                (Some(f), Some(g)) => {
                    let r = f.rank();
                    let k = dim - g.rank();
                    let z = g.compose(f).is_zero();
                    (r, k, z, Some(z && r == k))
                }
                _ => (0, 0, false, None),
            };
            NodeReport {
                class: nodes[i].class,
                degree: graded.then_some(nodes[i].degree),
                dim,
                outgoing: nodes[i].outgoing,
                incoming_rank,
                outgoing_kernel,
                composite_zero,
                exact,
            }
        })
        .collect()
}

/// Exactness of the hexagon `ℋ^{ℓ,m}` on an ungraded N-complex.
pub fn hexagon_check_ungraded(c: &UngradedComplex, l: usize, m: usize) -> Result<HexagonReport> {
    check_lm(c.order, l, m)?;
    let nodes: Vec<Node> = hexagon_pattern(c.order, l, m)
        .iter()
        .map(|&(class, outgoing, _)| Node { class, degree: 0, outgoing })
        .collect();
    let reports = run_chain(c, &nodes, true, false);
    let exact = reports.iter().all(|r| r.exact == Some(true));
    Ok(HexagonReport { l, m, order: c.order, nodes: reports, exact })
}

/// Hexagon of a graded view, taken on its total space.
pub fn hexagon_check(view: &ComplexView, l: usize, m: usize) -> Result<HexagonReport> {
    hexagon_check_ungraded(&view.total(), l, m)
}

/// The long sequence `𝒮^{ℓ,m}_p` inside the window. Nodes whose
/// neighbourhood leaves the window are reported untested.
pub fn long_sequences(view: &ComplexView, l: usize, m: usize, p: usize) -> Result<SequenceReport> {
    check_lm(view.order, l, m)?;
    if p >= view.order {
        return Err(Error::IllFormed(format!("p = {p} outside 0..{}", view.order - 1)));
    }
    let pattern = hexagon_pattern(view.order, l, m);
    let top = view.top() as isize;
    let mut nodes = Vec::new();
    // start one period early so the first in-window node has a predecessor
    let mut r: isize = -1;
    loop {
        let base = view.order as isize * r + p as isize;
        if base > top {
            break;
        }
        for &(class, outgoing, off) in &pattern {
            nodes.push(Node { class, degree: base + off as isize, outgoing });
        }
        r += 1;
    }
    let mut reports = run_chain(view, &nodes, false, true);
    // nodes below degree zero are zero spaces; they only serve as predecessors
    reports.retain(|n| (0..=top).contains(&n.degree.unwrap()));
    let tested = reports.iter().filter(|n| n.exact.is_some()).count();
    let exact = reports.iter().all(|n| n.exact != Some(false));
    Ok(SequenceReport {
        l,
        m,
        p,
        order: view.order,
        untested: reports.len() - tested,
        tested,
        nodes: reports,
        exact,
    })
}

/// Whether two hexagon reports agree node for node after a cyclic relabelling.
pub fn same_up_to_rotation(a: &HexagonReport, b: &HexagonReport) -> Option<usize> {
    let key = |n: &NodeReport| (n.class, n.dim, n.outgoing, n.exact);
    let ka: Vec<_> = a.nodes.iter().map(key).collect();
    let kb: Vec<_> = b.nodes.iter().map(key).collect();
    (0..ka.len()).find(|&s| (0..ka.len()).all(|i| ka[(i + s) % ka.len()] == kb[i]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexagonClass {
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

/// Groups the nontrivial `(ℓ, m)` for a given `N` by whether their hexagons
/// coincide up to rotation, comparing node classes and map labels. This is
/// an enumeration, not a formula.
pub fn hexagon_classes(order: usize) -> Vec<HexagonClass> {
    let sig = |l: usize, m: usize| -> Vec<(usize, MapKind)> {
        hexagon_pattern(order, l, m).iter().map(|&(c, k, _)| (c, k)).collect()
    };
    let mut classes: Vec<HexagonClass> = Vec::new();
    for l in 1..order {
        for m in 1..order {
            if l + m >= order {
                continue;
            }
            let s = sig(l, m);
            let found = classes.iter_mut().find(|c| {
                let t = sig(c.representative.0, c.representative.1);
                (0..6).any(|r| (0..6).all(|i| t[(i + r) % 6] == s[i]))
            });
            match found {
                Some(c) => c.members.push((l, m)),
                None => classes.push(HexagonClass { representative: (l, m), members: vec![(l, m)] }),
            }
        }
    }
    classes
}

/// A chain `e_0 → e_1 → … → e_{len−1} → 0` placed in degrees `start..start+len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: usize,
    pub len: usize,
}

/// Contribution of a set of chains to `dim H^(k),n`: a chain of length `L`
/// contributes its vectors `e_i` with `L − k ≤ i < N − k`.
pub fn chain_oracle(chains: &[Chain], order: usize, k: usize, n: usize) -> usize {
    chains
        .iter()
        .filter(|c| n >= c.start && n < c.start + c.len)
        .filter(|c| {
            let i = n - c.start;
            i + k >= c.len && i + k < order
        })
        .count()
}

/// A random graded N-complex: Jordan chains of length at most `N` inside
/// `[0, top]`, conjugated degreewise by random invertible matrices.
pub fn random_nilpotent_complex(
    order: usize,
    top: usize,
    max_total_dim: usize,
    seed: u64,
    mode: QMode,
) -> (ComplexView, Vec<Chain>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chains = Vec::new();
    let mut total = 0;
    let target = rng.gen_range(1..=max_total_dim);
    while total < target {
        let len = rng.gen_range(1..=order.min(top + 1));
        if total + len > max_total_dim {
            break;
        }
        let start = rng.gen_range(0..=top + 1 - len);
        chains.push(Chain { start, len });
        total += len;
    }
    let mut dims = vec![0; top + 1];
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for c in &chains {
        slots.push((0..c.len).map(|i| {
            let s = dims[c.start + i];
            dims[c.start + i] += 1;
            s
        }).collect());
    }
    let mut cols: Vec<Vec<Element>> = (0..top).map(|n| vec![Element::new(); dims[n]]).collect();
    for (c, s) in chains.iter().zip(&slots) {
        for i in 0..c.len.saturating_sub(1) {
            cols[c.start + i][s[i]] = Element::basis(s[i + 1], mode);
        }
    }
    let jordan: Vec<LinearMap> = cols.into_iter().enumerate().map(|(n, c)| LinearMap::new(dims[n + 1], c)).collect();
    let conj: Vec<(LinearMap, LinearMap)> = dims.iter().map(|&d| random_invertible(d, &mut rng, mode)).collect();
    let blocks = jordan
        .iter()
        .enumerate()
        .map(|(n, j)| conj[n + 1].0.compose(j).compose(&conj[n].1))
        .collect();
    let d = DegreeOneMap::new(blocks).expect("blocks chain");
    let view = ComplexView::new(dims, d, order, mode).expect("Jordan chains are nilpotent");
    (view, chains)
}

/// A random product of elementary matrices and its inverse.
fn random_invertible(dim: usize, rng: &mut ChaCha8Rng, mode: QMode) -> (LinearMap, LinearMap) {
    if dim < 2 {
        return (LinearMap::identity(dim, mode), LinearMap::identity(dim, mode));
    }
    let ops: Vec<(usize, usize, i64)> = (0..3 * dim)
        .map(|_| {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (i, j, c)
        })
        .collect();
    // row operation v_i += c v_j
    let apply = |v: &mut Element, (i, j, c): (usize, usize, i64)| {
        if let Some(x) = v.get(j).cloned() {
            v.add_term(i, &(&x * &Scalar::from_int(c, mode)));
        }
    };
    let forward = (0..dim)
        .map(|b| {
            let mut v = Element::basis(b, mode);
            for &op in ops.iter().rev() {
                apply(&mut v, op);
            }
            v
        })
        .collect();
    let backward = (0..dim)
        .map(|b| {
            let mut v = Element::basis(b, mode);
            for &(i, j, c) in &ops {
                apply(&mut v, (i, j, -c));
            }
            v
        })
        .collect();
    (LinearMap::new(dim, forward), LinearMap::new(dim, backward))
}

#[cfg(test)]
mod tests {
    use super::*;

    const M3: QMode = QMode::RootOfUnity(3);

    fn shift_complex() -> ComplexView {
        // e0 → e1 → e2 → 0 in degrees 0, 1, 2
        let d = DegreeOneMap::from_fn(&[1, 1, 1], |n, _| if n < 2 { Element::basis(0, M3) } else { Element::new() });
        ComplexView::new(vec![1, 1, 1], d, 3, M3).unwrap()
    }

    #[test]
    fn point_in_degree_zero() {
        let view = ComplexView::new(vec![1, 0, 0], DegreeOneMap::zero(&[1, 0, 0]), 3, M3).unwrap();
        assert_eq!(cohomology(&view, 1, 0).unwrap().dim, 1);
        assert_eq!(cohomology(&view, 2, 0).unwrap().dim, 1);
    }

    #[test]
    fn full_shift_matches_chain_oracle() {
        let view = shift_complex();
        let chains = [Chain { start: 0, len: 3 }];
        for n in 0..=2 {
            for k in 1..3 {
                if n + k <= 2 {
                    assert_eq!(cohomology(&view, k, n).unwrap().dim, chain_oracle(&chains, 3, k, n), "k={k} n={n}");
                }
            }
        }
        assert_eq!(cohomology(&view, 2, 1), Err(Error::WindowTooSmall { needed: 3, top: 2 }));
    }

    #[test]
    fn nilpotency_is_enforced() {
        let d = DegreeOneMap::from_fn(&[1, 1, 1, 1], |_, _| Element::basis(0, M3));
        assert!(matches!(ComplexView::new(vec![1, 1, 1, 1], d, 3, M3), Err(Error::NilpotencyViolation { degree: 0, .. })));
    }

    #[test]
    fn point_hexagon_is_exact() {
        let view = ComplexView::new(vec![1], DegreeOneMap::zero(&[1]), 3, M3).unwrap();
        let h = hexagon_check(&view, 1, 1).unwrap();
        assert!(h.exact);
        assert!(h.nodes.iter().all(|n| n.dim == 1));
        assert!(matches!(hexagon_check(&view, 2, 2), Err(Error::IllFormed(_))));
    }

    #[test]
    fn random_complexes_match_oracle() {
        for seed in 0..10 {
            let (view, chains) = random_nilpotent_complex(4, 7, 20, seed, QMode::RootOfUnity(4));
            for h in cohomology_table(&view) {
                assert_eq!(h.dim, chain_oracle(&chains, 4, h.k, h.n), "seed {seed} {h:?}");
            }
        }
    }

    #[test]
    fn classes_for_four() {
        let c = hexagon_classes(4);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members.len(), 3);
    }
}
