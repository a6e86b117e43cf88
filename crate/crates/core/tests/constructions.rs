//! Constructions checked against independent oracles or against each other.

use qdiff_core::acceptance::{hochschild_oracle, psi_matches_extension};
use qdiff_core::cochain::cup_power_triviality;
use qdiff_core::tensor::check_multiplicative;
use qdiff_core::{
    attach, cohomology, cohomology_table, extend_hom, fixtures, inner_differential, omega_classical, omega_q_embedded,
    tensor_calculus, BilinearProduct, CochainAlgebra, GradedAlgebra, LinearMap, QMode, TensorAlgebra, TruncatedAlgebra,
    Values, Variant,
};

fn rou(n: u32) -> QMode {
    QMode::RootOfUnity(n)
}

/// Integer structure constants `table[(i·d + j)·d + k]`.
fn int_table(a: &GradedAlgebra) -> (usize, Vec<i64>) {
    let p = BilinearProduct::from_algebra(a).unwrap();
    let d = p.dim();
    let mut table = vec![0i64; d * d * d];
    for i in 0..d {
        for j in 0..d {
            for (k, c) in p.basis_product(i, j).iter() {
                let r = c.as_rational().unwrap();
                table[(i * d + j) * d + k] = r.to_integer().try_into().unwrap();
            }
        }
    }
    (d, table)
}

#[test]
fn q_minus_one_recovers_ordinary_hochschild_cohomology() {
    const WINDOW: usize = 6;
    let mode = rou(2);
    for a in [fixtures::dual_numbers(mode), fixtures::diagonal(2, mode), fixtures::diagonal(3, mode)] {
        let (d, table) = int_table(&a);
        let oracle = hochschild_oracle(d, &table, WINDOW - 1);
        let cochains = CochainAlgebra::new(BilinearProduct::from_algebra(&a).unwrap(), Values::Algebra, WINDOW);
        let delta = cochains.delta_q_map().unwrap();
        let view = attach(cochains, delta, mode).unwrap().complex_view().unwrap();
        for n in 0..WINDOW {
            assert_eq!(cohomology(&view, 1, n).unwrap().dim, oracle[n], "HH^{n}");
        }
    }
}

#[test]
fn universal_cup_powers_are_normalized_cocycles() {
    let mode = rou(3);
    let t = TensorAlgebra::new(&fixtures::diagonal(2, mode), 3).unwrap();
    for n in 1..=2 {
        let r = cup_power_triviality(&t, n).unwrap();
        assert!(r.cocycle && r.normalized, "n = {n}: {r:?}");
        if n >= 2 {
            assert!(r.identity && r.in_a_tensor_omega, "n = {n}: {r:?}");
        }
    }
}

#[test]
fn extension_of_the_identity_is_the_identity() {
    // uniqueness: the identity is a homomorphism agreeing with (id, τ) on generators
    const MAX: usize = 4;
    let mode = rou(3);
    let t = TensorAlgebra::new(&fixtures::diagonal(2, mode), MAX).unwrap();
    let f = extend_hom(&t, &t, &LinearMap::identity(t.base_dim(), mode), &t.tau(), MAX).unwrap();
    for n in 0..=MAX {
        assert_eq!(f.blocks[n], LinearMap::identity(t.dim(n), mode), "degree {n}");
    }
    check_multiplicative(&t, &t, &f, MAX).unwrap();
}

#[test]
fn psi_restricted_to_the_envelope_is_the_universal_extension() {
    assert!(psi_matches_extension(&fixtures::diagonal(2, rou(3)), 3, rou(3)).unwrap());
    assert!(psi_matches_extension(&fixtures::diagonal(2, rou(4)), 3, rou(4)).unwrap());
}

#[test]
fn classical_envelope_is_the_embedded_one_at_q_minus_one() {
    const MAX: usize = 5;
    let mode = rou(2);
    for n in [2, 3] {
        let base = fixtures::diagonal(n, mode);
        let calc = tensor_calculus(&base, MAX, mode, Variant::D).unwrap();
        let embedded = omega_q_embedded(&calc).unwrap();
        assert!(omega_classical(calc.algebra()).same_spans(&embedded), "C^{n}");
    }
}

#[test]
fn embedded_envelope_is_a_differential_subalgebra() {
    let mode = rou(3);
    let calc = tensor_calculus(&fixtures::diagonal(2, mode), 5, mode, Variant::D).unwrap();
    let e = omega_q_embedded(&calc).unwrap();
    assert!(e.closed_under(calc.d()));
    assert!(e.closed_under_products(calc.algebra()));
}

#[test]
fn both_tensor_differentials_are_nilpotent() {
    for n in [3, 4] {
        for variant in [Variant::D, Variant::DPrime] {
            let calc = tensor_calculus(&fixtures::diagonal(2, rou(n)), 6, rou(n), variant).unwrap();
            assert!(!calc.qda().report().nilpotency_degrees.is_empty());
        }
    }
}

#[test]
fn stable_cells_do_not_depend_on_the_window() {
    let mode = rou(3);
    let m3 = fixtures::matrix_units(3, mode);
    let e = fixtures::cyclic_shift(3, &[2, 3, 5], mode);
    let small = cohomology_table(&inner_differential(&m3, &e, 8).unwrap().complex_view().unwrap());
    let large = cohomology_table(&inner_differential(&m3, &e, 11).unwrap().complex_view().unwrap());
    let mut compared = 0;
    for h in small.iter().filter(|h| h.stable) {
        let g = large.iter().find(|g| g.k == h.k && g.n == h.n).unwrap();
        assert_eq!(g.dim, h.dim, "H^({}),{}", h.k, h.n);
        compared += 1;
    }
    assert!(compared > 0);
}

#[test]
fn golden_fixture_files_match_the_builtin_algebras() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let load = |name: &str, mode| {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        serde_json::from_str::<qdiff_core::AlgebraFile>(&text).unwrap().build(mode).unwrap()
    };
    for mode in [QMode::Generic, rou(3), rou(5)] {
        assert_eq!(load("c2.json", mode).to_file(), fixtures::diagonal(2, mode).to_file());
        assert_eq!(load("dual_numbers.json", mode).to_file(), fixtures::dual_numbers(mode).to_file());
    }
    assert_eq!(load("m3.json", rou(3)).to_file(), fixtures::matrix_units(3, rou(3)).to_file());
}
