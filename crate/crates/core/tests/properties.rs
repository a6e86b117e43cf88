//! Algebraic invariants checked on random inputs.

use num_traits::Signed;
use proptest::prelude::*;
use qdiff_core::homology::{
    chain_oracle, hexagon_check, long_sequences, random_nilpotent_complex, rank_nullity_holds, same_up_to_rotation,
};
use qdiff_core::acceptance::dense_rank;
use qdiff_core::{cohomology, q_binomial, LinearMap, Poly, QMode, Scalar};

fn dense(m: &LinearMap) -> Vec<Vec<num_rational::BigRational>> {
    let mut rows = vec![vec![num_rational::BigRational::from_integer(0.into()); m.source_dim()]; m.target_dim()];
    for (j, col) in m.columns().iter().enumerate() {
        for (i, c) in col.iter() {
            rows[i][j] = c.as_rational().expect("rational entries at q = -1");
        }
    }
    rows
}

fn mode_strategy() -> impl Strategy<Value = QMode> {
    prop_oneof![Just(QMode::Generic), (2u32..=9).prop_map(QMode::RootOfUnity)]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| Poly::from_ints(&c))
}

/// A random scalar; in generic mode a ratio of two polynomials.
fn scalar_in(mode: QMode) -> impl Strategy<Value = Scalar> {
    (poly_strategy(), poly_strategy()).prop_map(move |(n, d)| {
        let num = Scalar::from_poly(n, mode);
        match mode {
            QMode::Generic if !d.is_zero() => &num / &Scalar::from_poly(d, mode),
            _ => num,
        }
    })
}

fn three_scalars() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    mode_strategy().prop_flat_map(|m| (scalar_in(m), scalar_in(m), scalar_in(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalars_form_a_field((a, b, c) in three_scalars()) {
        let mode = a.mode();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(mode), a.clone());
        prop_assert_eq!(&a * &Scalar::one(mode), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero elements are invertible");
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn scalar_strings_round_trip(a in mode_strategy().prop_flat_map(scalar_in)) {
        let back = Scalar::parse_in(&a.to_string(), a.mode()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn q_pascal_recurrence(n in 1u32..=12, p in 1u32..=12, mode in mode_strategy()) {
        prop_assume!(p < n);
        let lhs = q_binomial(n, p, mode).unwrap();
        let a = q_binomial(n - 1, p - 1, mode).unwrap();
        let b = q_binomial(n - 1, p, mode).unwrap();
        prop_assert_eq!(&lhs, &(&a + &(&Scalar::q_pow(p as i64, mode) * &b)));
        prop_assert_eq!(&lhs, &(&(&Scalar::q_pow((n - p) as i64, mode) * &a) + &b));
    }

    #[test]
    fn generic_q_binomials_have_nonnegative_integer_coefficients(n in 0u32..=10, p in 0u32..=10) {
        prop_assume!(p <= n);
        let Scalar::Generic(r) = q_binomial(n, p, QMode::Generic).unwrap() else { unreachable!() };
        prop_assert!(r.denominator().is_one());
        let coeffs = r.numerator().coeffs();
        prop_assert!(coeffs.iter().all(|c| c.is_integer() && !c.is_negative()));
        // evaluation at q = 1 is the ordinary binomial coefficient
        let total: i64 = coeffs.iter().map(|c| c.to_integer().try_into().unwrap_or(i64::MAX)).sum();
        let ordinary = (0..p as i64).fold(1i64, |acc, i| acc * (n as i64 - i) / (i + 1));
        prop_assert_eq!(total, ordinary);
    }

    #[test]
    fn specialization_commutes_with_q_binomials(n in 0u32..=10, p in 0u32..=10, order in 1u32..=8) {
        prop_assume!(p <= n);
        let mode = QMode::RootOfUnity(order);
        let generic = q_binomial(n, p, QMode::Generic).unwrap();
        prop_assert_eq!(generic.coerce(mode).unwrap(), q_binomial(n, p, mode).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_complexes_match_the_chain_oracle(order in 2usize..=5, extra in 0usize..4, seed in any::<u64>()) {
        let mode = QMode::RootOfUnity(order as u32);
        let top = order + extra;
        let (view, chains) = random_nilpotent_complex(order, top, 24, seed, mode);
        for k in 1..order {
            for n in 0..=top - k {
                prop_assert_eq!(cohomology(&view, k, n).unwrap().dim, chain_oracle(&chains, order, k, n));
                prop_assert!(rank_nullity_holds(&view, k, n).unwrap());
            }
        }
    }

    #[test]
    fn hexagons_and_sequences_are_exact(order in 3usize..=5, seed in any::<u64>()) {
        let mode = QMode::RootOfUnity(order as u32);
        let (view, _) = random_nilpotent_complex(order, 2 * order, 24, seed, mode);
        for l in 1..order {
            for m in 1..order - l {
                prop_assert!(hexagon_check(&view, l, m).unwrap().exact);
                for p in 0..order {
                    prop_assert!(long_sequences(&view, l, m, p).unwrap().exact);
                }
            }
        }
    }

    #[test]
    fn order_four_hexagons_agree_up_to_rotation(seed in any::<u64>()) {
        let mode = QMode::RootOfUnity(4);
        let (view, _) = random_nilpotent_complex(4, 8, 20, seed, mode);
        let base = hexagon_check(&view, 1, 1).unwrap();
        for (l, m) in [(1, 2), (2, 1)] {
            let other = hexagon_check(&view, l, m).unwrap();
            prop_assert!(same_up_to_rotation(&base, &other).is_some(), "({}, {}) differs from (1, 1)", l, m);
        }
    }

    #[test]
    fn order_two_is_ordinary_cohomology(top in 1usize..7, seed in any::<u64>()) {
        let mode = QMode::RootOfUnity(2);
        let (view, _) = random_nilpotent_complex(2, top, 24, seed, mode);
        let rank = |n: usize| view.d().block(n).map_or(0, |b| dense_rank(dense(b)));
        for n in 0..top {
            let below = if n == 0 { 0 } else { rank(n - 1) };
            let ordinary = view.dims()[n] - rank(n) - below;
            prop_assert_eq!(cohomology(&view, 1, n).unwrap().dim, ordinary);
        }
    }
}
