//! q-differentials on truncated graded algebras: law checking, iteration,
//! the iterated Leibniz expansion and inner differentials `A ↦ eA − q^a Ae`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{covering, lift_map, DegreeOneMap, Element, GradedAlgebra, Grading, TruncatedAlgebra};
use crate::homology::ComplexView;
use crate::linalg::LinearMap;
use crate::scalar::{q_binomial, QMode, Scalar};

/// What [`attach`] verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub mode: String,
    pub top_degree: usize,
    pub dims: Vec<usize>,
    /// Basis pairs on which the q-Leibniz rule was checked.
    pub leibniz_pairs: usize,
    /// Source degrees on which `d^N = 0` was checked (empty in generic mode).
    pub nilpotency_degrees: Vec<usize>,
    pub unit_closed: Option<bool>,
}

/// A truncated graded algebra with a validated q-differential.
#[derive(Clone, Debug)]
pub struct QDiffAlgebra<A> {
    algebra: A,
    d: DegreeOneMap,
    mode: QMode,
    report: LawReport,
}

/// Checks the q-Leibniz rule on every basis pair whose product lies below the
/// top degree, `d(1) = 0`, and `d^N = 0` on every degree whose N-fold image
/// stays in the window. The first failure in the fixed order
/// `(deg a, a, deg b, b)` is returned.
pub fn attach<A: TruncatedAlgebra>(algebra: A, d: DegreeOneMap, mode: QMode) -> Result<QDiffAlgebra<A>> {
    algebra.check_nat_graded()?;
    if algebra.mode() != mode {
        return Err(Error::Domain(format!("algebra is over mode {}, differential over {mode}", algebra.mode())));
    }
    let top = algebra.top_degree();
    if d.len() != top {
        return Err(Error::DimensionMismatch(format!("{} differential blocks for top degree {top}", d.len())));
    }
    for (n, b) in d.blocks().iter().enumerate() {
        if b.source_dim() != algebra.dim(n) || b.target_dim() != algebra.dim(n + 1) {
            return Err(Error::DimensionMismatch(format!("block {n} does not match the algebra dimensions")));
        }
    }

    let unit_closed = match algebra.unit() {
        Some(u) if top >= 1 => {
            let du = d.apply(0, &u)?;
            if !du.is_zero() {
                return Err(Error::UnitNotClosed(du));
            }
            Some(true)
        }
        _ => None,
    };

    let sources: Vec<(usize, usize)> =
        (0..top).flat_map(|da| (0..algebra.dim(da)).map(move |a| (da, a))).collect();
    let failures: Vec<Option<Error>> =
        sources.par_iter().map(|&(da, a)| leibniz_witness(&algebra, &d, mode, da, a).err()).collect();
    if let Some(e) = failures.into_iter().flatten().next() {
        return Err(e);
    }
    let leibniz_pairs = (0..top)
        .map(|da| algebra.dim(da) * (0..top - da).map(|db| algebra.dim(db)).sum::<usize>())
        .sum();

    let mut nilpotency_degrees = Vec::new();
    if let Some(n) = mode.order() {
        let n = n as usize;
        for deg in 0..top {
            if deg + n > top {
                break;
            }
            let p = d.power(deg, n, mode)?;
            if let Some((i, img)) = p.columns().iter().enumerate().find(|(_, c)| !c.is_zero()) {
                return Err(Error::NilpotencyViolation { degree: deg, index: i, image: img.clone() });
            }
            nilpotency_degrees.push(deg);
        }
    }

    let report = LawReport {
        mode: mode.to_string(),
        top_degree: top,
        dims: algebra.dims(),
        leibniz_pairs,
        nilpotency_degrees,
        unit_closed,
    };
    Ok(QDiffAlgebra { algebra, d, mode, report })
}

fn leibniz_witness<A: TruncatedAlgebra>(algebra: &A, d: &DegreeOneMap, mode: QMode, da: usize, a: usize) -> Result<()> {
    let top = algebra.top_degree();
    let ea = Element::basis(a, mode);
    let da_img = d.apply(da, &ea)?;
    let sign = Scalar::q_pow(da as i64, mode);
    for db in 0..top - da {
        for b in 0..algebra.dim(db) {
            let eb = Element::basis(b, mode);
            let lhs = d.apply(da + db, &algebra.mul_basis(da, a, db, b))?;
            let mut rhs = algebra.mul(da + 1, &da_img, db, &eb);
            let db_img = d.apply(db, &eb)?;
            rhs.add_scaled(&sign, &algebra.mul(da, &ea, db + 1, &db_img));
            if lhs != rhs {
                return Err(Error::LeibnizViolation { deg_a: da, a, deg_b: db, b, defect: lhs.sub(&rhs) });
            }
        }
    }
    Ok(())
}

impl<A: TruncatedAlgebra> QDiffAlgebra<A> {
    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn d(&self) -> &DegreeOneMap {
        &self.d
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn report(&self) -> &LawReport {
        &self.report
    }

    pub fn top_degree(&self) -> usize {
        self.algebra.top_degree()
    }

    /// `d^n x` for `x` in degree `degree`.
    pub fn iterate_d(&self, degree: usize, x: &Element, n: usize) -> Result<Element> {
        let top = self.top_degree();
        if degree + n > top {
            return Err(Error::TruncationExceeded { needed: degree + n, top });
        }
        let mut v = x.clone();
        for k in 0..n {
            v = self.d.apply(degree + k, &v)?;
        }
        Ok(v)
    }

    /// Both sides of `d^n(αβ) = Σ_p q^{ap} [n p]_q d^{n−p}(α) d^p(β)` for `α`
    /// of degree `a`, `β` of degree `b`.
    pub fn iterated_leibniz(&self, a: usize, x: &Element, b: usize, y: &Element, n: usize) -> Result<(Element, Element)> {
        let top = self.top_degree();
        if a + b + n > top {
            return Err(Error::TruncationExceeded { needed: a + b + n, top });
        }
        let lhs = self.iterate_d(a + b, &self.algebra.mul(a, x, b, y), n)?;
        let xs: Vec<Element> = (0..=n).map(|k| self.iterate_d(a, x, k)).collect::<Result<_>>()?;
        let ys: Vec<Element> = (0..=n).map(|k| self.iterate_d(b, y, k)).collect::<Result<_>>()?;
        let mut rhs = Element::new();
        for p in 0..=n {
            let c = &Scalar::q_pow((a * p) as i64, self.mode) * &q_binomial(n as u32, p as u32, self.mode)?;
            if c.is_zero() || xs[n - p].is_zero() || ys[p].is_zero() {
                continue;
            }
            rhs.add_scaled(&c, &self.algebra.mul(a + n - p, &xs[n - p], b + p, &ys[p]));
        }
        Ok((lhs, rhs))
    }

    /// The underlying N-complex, with `N` the order of `q`.
    pub fn complex_view(&self) -> Result<ComplexView> {
        let n = self
            .mode
            .order()
            .ok_or_else(|| Error::Domain("generic q has no finite N; pick the complex order explicitly".into()))?;
        self.complex_view_with(n as usize)
    }

    pub fn complex_view_with(&self, order: usize) -> Result<ComplexView> {
        ComplexView::new(self.algebra.dims(), self.d.clone(), order, self.mode)
    }
}

/// `A ↦ eA − q^{∂A} Ae` on the global basis. For a ℤ_N-graded algebra the
/// power `q^{∂A}` is only defined when `q^N = 1`.
pub fn inner_derivation(a: &GradedAlgebra, e: &Element) -> Result<LinearMap> {
    let mode = a.mode();
    let deg = a
        .homogeneous_degree(e)
        .ok_or_else(|| Error::NonHomogeneous("e must be a nonzero homogeneous element".into()))?;
    if deg != 1 {
        return Err(Error::NonHomogeneous(format!("e has degree {deg}, not 1")));
    }
    if let Grading::ModN(n) = a.grading() {
        match mode.order() {
            Some(o) if n % o == 0 => {}
            _ => {
                return Err(Error::Domain(format!(
                    "q^a is ill-defined on a Z_{n}-grading unless q^{n} = 1 (mode {mode})"
                )))
            }
        }
    }
    let cols = (0..a.dim_total())
        .map(|g| {
            let b = Element::basis(g, mode);
            let mut v = a.mul(e, &b);
            v.add_scaled(&-Scalar::q_pow(a.degree_of(g) as i64, mode), &a.mul(&b, e));
            v
        })
        .collect();
    Ok(LinearMap::new(a.dim_total(), cols))
}

/// The inner differential of `e` packaged as a q-differential algebra: on a
/// ℤ_N-graded algebra it is lifted to the covering truncated at `max_degree`;
/// on an ℕ-graded one `max_degree` is ignored.
pub fn inner_differential(a: &GradedAlgebra, e: &Element, max_degree: usize) -> Result<QDiffAlgebra<GradedAlgebra>> {
    let mode = a.mode();
    let dmap = inner_derivation(a, e)?;
    match a.grading() {
        Grading::ModN(_) => {
            let cov = covering(a, max_degree)?;
            let lifted = lift_map(&cov, a, &dmap, 1)?.into_degree_one()?;
            attach(cov.into_algebra(), lifted, mode)
        }
        Grading::Nat => {
            let top = TruncatedAlgebra::top_degree(a);
            let dims = a.dims();
            let d = DegreeOneMap::from_fn(&dims, |n, i| {
                let g = a.basis_of_degree(n)[i];
                a.to_local(n + 1, dmap.column(g)).expect("inner derivation is homogeneous")
            });
            debug_assert_eq!(d.len(), top);
            attach(a.clone(), d, mode)
        }
    }
}

/// Checks `D^k = ad(e^k)` on the global basis, where `D` is the inner
/// derivation of `e` and `ad(c)(A) = cA − Ac`. Returns the first basis index
/// where they differ.
pub fn inner_power_witness(a: &GradedAlgebra, e: &Element, k: u32) -> Result<Option<usize>> {
    let dmap = inner_derivation(a, e)?;
    let ek = a.power(e, k)?;
    for g in 0..a.dim_total() {
        let b = Element::basis(g, a.mode());
        let mut lhs = b.clone();
        for _ in 0..k {
            lhs = dmap.apply(&lhs);
        }
        let rhs = a.mul(&ek, &b).sub(&a.mul(&b, &ek));
        if lhs != rhs {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const M2: QMode = QMode::RootOfUnity(2);
    const M3: QMode = QMode::RootOfUnity(3);

    #[test]
    fn zero_differential_is_valid() {
        let m = fixtures::matrix_units(2, M2);
        let cov = covering(&m, 4).unwrap().into_algebra();
        let d = DegreeOneMap::zero(&cov.dims());
        assert!(attach(cov, d, M2).is_ok());
    }

    #[test]
    fn inner_differential_on_m3() {
        let m = fixtures::matrix_units(3, M3);
        let e = fixtures::cyclic_shift(3, &[1, 1, 1], M3);
        let qda = inner_differential(&m, &e, 6).unwrap();
        assert_eq!(qda.report().nilpotency_degrees, vec![0, 1, 2, 3]);
    }

    #[test]
    fn e_cubed_is_scalar() {
        let m = fixtures::matrix_units(3, M3);
        let e = fixtures::cyclic_shift(3, &[1, 2, 3], M3);
        let e3 = m.power(&e, 3).unwrap();
        assert_eq!(e3, m.unit_element().unwrap().scale(&Scalar::from_int(6, M3)));
        assert_eq!(inner_power_witness(&m, &e, 3).unwrap(), None);
        assert!(inner_differential(&m, &e, 6).is_ok());
    }

    #[test]
    fn nilpotent_e_in_m2() {
        let m = fixtures::matrix_units(2, M2);
        let e = fixtures::cyclic_shift(2, &[1, 0], M2);
        assert!(m.power(&e, 2).unwrap().is_zero());
        assert!(inner_differential(&m, &e, 5).is_ok());
    }

    #[test]
    fn scaling_odd_degrees_breaks_leibniz() {
        let m = fixtures::matrix_units(2, M2);
        let e = fixtures::cyclic_shift(2, &[1, 1], M2);
        let good = inner_differential(&m, &e, 5).unwrap();
        let two = Scalar::from_int(2, M2);
        let blocks = good
            .d()
            .blocks()
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if n % 2 == 1 {
                    LinearMap::new(b.target_dim(), b.columns().iter().map(|c| c.scale(&two)).collect())
                } else {
                    b.clone()
                }
            })
            .collect();
        let bad = DegreeOneMap::new(blocks).unwrap();
        let err = attach(good.algebra().clone(), bad.clone(), M2).unwrap_err();
        assert!(matches!(err, Error::LeibnizViolation { .. }), "{err}");
        // same inputs, same witness
        assert_eq!(attach(good.algebra().clone(), bad, M2).unwrap_err(), err);
    }

    #[test]
    fn iterate_respects_window() {
        let m = fixtures::matrix_units(2, M2);
        let e = fixtures::cyclic_shift(2, &[1, 1], M2);
        let qda = inner_differential(&m, &e, 3).unwrap();
        let x = Element::basis(0, M2);
        assert_eq!(qda.iterate_d(0, &x, 0).unwrap(), x);
        assert_eq!(qda.iterate_d(1, &x, 3), Err(Error::TruncationExceeded { needed: 4, top: 3 }));
    }

    #[test]
    fn generic_mode_rejects_z_n_inner_derivation() {
        let m = fixtures::matrix_units(2, QMode::Generic);
        let e = fixtures::cyclic_shift(2, &[1, 1], QMode::Generic);
        assert!(matches!(inner_derivation(&m, &e), Err(Error::Domain(_))));
    }
}
