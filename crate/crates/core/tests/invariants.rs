//! Cross-backend invariants of the scalar kernel.

use nineteen_vertex_core::matrix::{kron, permutator, DenseMatrix};
use nineteen_vertex_core::projective::projective_eq;
use nineteen_vertex_core::scalar::{Jet, Rat, Scalar};
use num_complex::Complex;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// A fixed rational test function with no real poles:
/// `f(x) = (x^3 - 2x + 1)/(x^2 + 3)`.
fn f<K: Scalar>(x: &K) -> K {
    let num = x.clone() * x.clone() * x.clone() - K::from_int(2) * x.clone() + K::one();
    let den = x.clone() * x.clone() + K::from_int(3);
    num.try_div(&den).expect("denominator positive")
}

fn small_rat(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d.max(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Jet evaluation yields f(x) exactly in the base slot and f'(x) in
    /// the tangent slot, matching float central differences to 1e-6.
    #[test]
    fn jet_tangent_matches_central_differences(n in -40i64..40, d in 1i64..12) {
        let x = small_rat(n, d);
        let jet = f(&Jet::variable(x.clone()));
        prop_assert_eq!(jet.base, f(&x));

        let xf = x.to_f64().unwrap();
        let h = 1e-6;
        let fd = |t: f64| {
            let z = Complex::new(t, 0.0);
            f(&z).re
        };
        let central = (fd(xf + h) - fd(xf - h)) / (2.0 * h);
        let exact = jet.tan.to_f64().unwrap();
        let denom = exact.abs().max(1.0);
        prop_assert!(
            (central - exact).abs() / denom < 1e-6,
            "jet {} vs central {}", exact, central
        );
    }

    /// Projective equality is scale invariance.
    #[test]
    fn projective_points_equal_their_scalings(
        coords in prop::collection::vec((-30i64..30, 1i64..9), 3..6),
        lambda_n in 1i64..9,
        lambda_d in 1i64..9,
    ) {
        let v: Vec<Rat> = coords.iter().map(|&(n, d)| small_rat(n, d)).collect();
        prop_assume!(v.iter().any(|c| !c.is_zero()));
        let lambda = small_rat(lambda_n, lambda_d);
        let scaled: Vec<Rat> = v.iter().map(|c| c.clone() * lambda.clone()).collect();
        prop_assert!(projective_eq(&v, &scaled).unwrap());
    }

    /// `P (A ⊗ B) P = B ⊗ A` for random rational 3x3 matrices.
    #[test]
    fn permutator_conjugation(seed in any::<u64>()) {
        let mut s = seed | 1;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            small_rat(((s >> 33) % 17) as i64 - 8, 1 + ((s >> 13) % 6) as i64)
        };
        let a = DenseMatrix::from_fn(3, 3, |_, _| next());
        let b = DenseMatrix::from_fn(3, 3, |_, _| next());
        let p = permutator::<Rat>(3);
        prop_assert_eq!(p.mul(&kron(&a, &b)).mul(&p), kron(&b, &a));
    }
}

mod route_equivalence {
    use nineteen_vertex_core::sample::{sample_k3_quadext, sample_spectral, SplitMix64};
    use nineteen_vertex_core::scalar::QuadExt;
    use nineteen_vertex_core::variety::threefold;
    use nineteen_vertex_core::weights::{
        weights_from_k3, weights_from_spectral, weights_from_threefold, ThreefoldPoint,
    };
    use nineteen_vertex_core::{Couplings, Rat, Scalar};

    #[test]
    fn spectral_and_threefold_charts_agree_on_fifty_points() {
        let cpl = Couplings::derive(Rat::from_int(1), Rat::from_int(2)).unwrap();
        let mut rng = SplitMix64::new(2024);
        for _ in 0..50 {
            let p = sample_spectral(&mut rng, &cpl, 20).unwrap().value;
            let w = weights_from_spectral(&p, &cpl).unwrap();
            let tp = ThreefoldPoint::new(w.threefold_coords(), &cpl).unwrap();
            let w2 = weights_from_threefold(&tp, &cpl).unwrap();
            assert!(w.projectively_equal(&w2).unwrap());
        }
    }

    #[test]
    fn quartic_chart_always_has_symmetric_c_weights() {
        let cpl = Couplings::derive(Rat::from_int(1), Rat::from_int(2)).unwrap();
        let cpl_ext = cpl.convert(|x| QuadExt::base(x.clone()));
        let mut rng = SplitMix64::new(2025);
        for _ in 0..50 {
            let p = sample_k3_quadext(&mut rng, &cpl, 8).unwrap().value;
            let w = weights_from_k3(&p, &cpl_ext).unwrap();
            assert_eq!(w.c_plus, w.c_minus);
            assert!(threefold(&cpl_ext, &w.threefold_coords()).is_zero());
            assert!(w.footnote_identity_residual().is_zero());
        }
    }
}

mod quadratic_extension_axioms {
    use nineteen_vertex_core::scalar::{QuadExt, Rat, Scalar};
    use proptest::prelude::*;

    type Q2 = QuadExt<Rat>;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d.max(1))
    }

    prop_compose! {
        fn extension_elems()(
            p in -6i64..6, q in -6i64..6,
            u1 in -9i64..9, v1 in -9i64..9,
            u2 in -9i64..9, v2 in -9i64..9,
            u3 in -9i64..9, v3 in -9i64..9,
        ) -> (Q2, Q2, Q2) {
            // monic quadratic r^2 + p r + q; irreducibility is not
            // required for the ring axioms below
            let min = std::sync::Arc::new(nineteen_vertex_core::scalar::MinPoly {
                p: rat(p, 1),
                q: rat(q, 1),
            });
            (
                Q2::new(rat(u1, 2), rat(v1, 3), &min),
                Q2::new(rat(u2, 3), rat(v2, 2), &min),
                Q2::new(rat(u3, 1), rat(v3, 4), &min),
            )
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((x, y, z) in extension_elems()) {
            // commutativity and associativity
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!(
                (x.clone() * y.clone()) * z.clone(),
                x.clone() * (y.clone() * z.clone())
            );
            // distributivity
            prop_assert_eq!(
                x.clone() * (y.clone() + z.clone()),
                x.clone() * y.clone() + x.clone() * z.clone()
            );
        }

        #[test]
        fn inverses_multiply_to_one((x, _, _) in extension_elems()) {
            // with a reducible minimal polynomial the norm can vanish on
            // nonzero elements; only invert when the norm is nonzero
            match x.try_inv() {
                Ok(xi) => prop_assert_eq!(x * xi, Q2::one()),
                Err(_) => prop_assert!(true),
            }
        }
    }
}
