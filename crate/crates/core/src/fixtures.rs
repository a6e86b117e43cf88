//! Small algebras used throughout the tests, the acceptance suite and the CLI.

use std::collections::BTreeMap;

use crate::cochain::BilinearProduct;
use crate::graded::{AlgebraData, Element, GradedAlgebra, Grading, make_algebra};
use crate::scalar::{QMode, Scalar};

/// ℂⁿ with idempotent basis `p_i p_j = δ_ij p_i`, concentrated in degree 0,
/// unit `Σ p_i`.
pub fn diagonal_data(n: usize, mode: QMode) -> AlgebraData {
    let one = Scalar::one(mode);
    let products = (0..n).map(|i| ((i, i), Element::basis(i, mode))).collect();
    AlgebraData {
        mode,
        labels: (1..=n).map(|i| format!("p{i}")).collect(),
        degrees: vec![0; n],
        grading: Grading::Nat,
        products,
        unit: Some(Element::from_entries((0..n).map(|i| (i, one.clone())))),
        top_degree: None,
    }
}

pub fn diagonal(n: usize, mode: QMode) -> GradedAlgebra {
    make_algebra(diagonal_data(n, mode)).expect("diagonal algebra is valid")
}

/// Index of `E^k_ℓ` (1-based `k`, `ℓ`) in [`matrix_units`].
pub fn matrix_unit_index(n: usize, k: usize, l: usize) -> usize {
    (k - 1) * n + (l - 1)
}

/// M_n with basis `E^k_ℓ`, `E^k_ℓ E^r_s = δ^k_s E^r_ℓ`, graded by `k − ℓ mod n`.
pub fn matrix_units_data(n: usize, mode: QMode) -> AlgebraData {
    let mut labels = Vec::with_capacity(n * n);
    let mut degrees = Vec::with_capacity(n * n);
    for k in 1..=n {
        for l in 1..=n {
            labels.push(format!("E{k}_{l}"));
            degrees.push(((k + n - l) % n) as u32);
        }
    }
    let mut products = BTreeMap::new();
    for k in 1..=n {
        for l in 1..=n {
            for r in 1..=n {
                // s = k
                products.insert(
                    (matrix_unit_index(n, k, l), matrix_unit_index(n, r, k)),
                    Element::basis(matrix_unit_index(n, r, l), mode),
                );
            }
        }
    }
    let one = Scalar::one(mode);
    let unit = Element::from_entries((1..=n).map(|k| (matrix_unit_index(n, k, k), one.clone())));
    AlgebraData {
        mode,
        labels,
        degrees,
        grading: Grading::ModN(n as u32),
        products,
        unit: Some(unit),
        top_degree: None,
    }
}

pub fn matrix_units(n: usize, mode: QMode) -> GradedAlgebra {
    make_algebra(matrix_units_data(n, mode)).expect("matrix units are valid")
}

/// `e = λ₁E²₁ + λ₂E³₂ + … + λ_{n−1}Eⁿ_{n−1} + λ_n E¹_n`, homogeneous of degree 1.
pub fn cyclic_shift(n: usize, lambda: &[i64], mode: QMode) -> Element {
    let l: Vec<Scalar> = lambda.iter().map(|&v| Scalar::from_int(v, mode)).collect();
    cyclic_shift_with(n, &l)
}

pub fn cyclic_shift_with(n: usize, lambda: &[Scalar]) -> Element {
    assert_eq!(lambda.len(), n, "one coefficient per cyclic position");
    Element::from_entries(
        (1..=n).map(|k| (matrix_unit_index(n, k % n + 1, k), lambda[k - 1].clone())),
    )
}

/// ℂ[ε]/(ε²) with basis `1, ε`, in degree 0.
pub fn dual_numbers_data(mode: QMode) -> AlgebraData {
    let mut products = BTreeMap::new();
    products.insert((0, 0), Element::basis(0, mode));
    products.insert((0, 1), Element::basis(1, mode));
    products.insert((1, 0), Element::basis(1, mode));
    AlgebraData {
        mode,
        labels: vec!["1".into(), "eps".into()],
        degrees: vec![0, 0],
        grading: Grading::Nat,
        products,
        unit: Some(Element::basis(0, mode)),
        top_degree: None,
    }
}

pub fn dual_numbers(mode: QMode) -> GradedAlgebra {
    make_algebra(dual_numbers_data(mode)).expect("dual numbers are valid")
}

/// A unital but non-associative product on the basis `1, x, y`:
/// `xx = y`, `xy = 1`, `yx = x`, `yy = 0`. Here `(xx)x = x` while `x(xx) = 1`.
pub fn non_associative(mode: QMode) -> BilinearProduct {
    let b = |i| Element::basis(i, mode);
    let mut table = vec![Element::new(); 9];
    for i in 0..3 {
        table[i] = b(i);
        table[3 * i] = b(i);
    }
    table[3 + 1] = b(2);
    table[3 + 2] = b(0);
    table[2 * 3 + 1] = b(1);
    BilinearProduct::from_table(3, table, Some(b(0)), mode)
}
