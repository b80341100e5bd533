use lagstab::geometry::{metric_hyperbolic, phi_forward, phi_inverse, torus_point};
use lagstab::oracle::{laplacian_comparison_check, second_variation_spectral, TrigMonomial};
use lagstab::stability::{classify_mode, coefficients, mode_bound, q_form, weighted_norm, Sign};
use lagstab::{Mode, OrbitSpec, Rational};
use num::{BigInt, One, Signed, Zero};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn orbit_strategy(max_n: usize) -> impl Strategy<Value = OrbitSpec<Rational>> {
    (1..=max_n)
        .prop_flat_map(|n| (prop::collection::vec(1u64..=30, n), 1i64..60, 2i64..=61))
        .prop_filter_map("t in (0,1)", |(w, p, d)| {
            (p < d).then(|| OrbitSpec::from_weights(q(p, d), &w).unwrap())
        })
}

fn orbit_and_mode(max_n: usize, max_entry: i64) -> impl Strategy<Value = (OrbitSpec<Rational>, Mode)> {
    orbit_strategy(max_n).prop_flat_map(move |o| {
        let n = o.n();
        (Just(o), prop::collection::vec(-max_entry..=max_entry, n))
            .prop_filter_map("nonzero mode", |(o, m)| Mode::new(m).ok().map(|m| (o, m)))
    })
}

fn sign(x: &Rational) -> Sign {
    if x.is_zero() {
        Sign::Zero
    } else if x.is_negative() {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn q_is_even((o, m) in orbit_and_mode(5, 4)) {
        prop_assert_eq!(q_form(&o, &m).unwrap(), q_form(&o, &m.negated()).unwrap());
    }

    #[test]
    fn q_is_permutation_equivariant((o, m) in orbit_and_mode(5, 4), rot in 0usize..5) {
        let n = o.n();
        let k = rot % n;
        let perm = |v: &[Rational]| -> Vec<Rational> { (0..n).map(|i| v[(i + k) % n].clone()).collect() };
        let po = OrbitSpec::from_simplex(n, o.tanh_sq().clone(), &perm(o.simplex())).unwrap();
        let pm = Mode::new((0..n).map(|i| m.entries()[(i + k) % n]).collect()).unwrap();
        prop_assert_eq!(q_form(&o, &m).unwrap(), q_form(&po, &pm).unwrap());
    }

    #[test]
    fn completed_square_identity((o, m) in orbit_and_mode(5, 5)) {
        let c = coefficients(&o, &m).unwrap();
        prop_assert_eq!(c.q(), c.q_completed_square());
    }

    #[test]
    fn cauchy_schwarz_d2_le_b((o, m) in orbit_and_mode(5, 5)) {
        let c = coefficients(&o, &m).unwrap();
        prop_assert!(Rational::from_integer(BigInt::from(c.d * c.d)) <= c.b);
    }

    #[test]
    fn fast_paths_are_sound((o, m) in orbit_and_mode(5, 3)) {
        let class = classify_mode(&o, &m).unwrap();
        if let Some(claim) = class.sign_claim(&o, &m) {
            prop_assert_eq!(claim, sign(&q_form(&o, &m).unwrap()), "{:?}", class);
        }
    }

    #[test]
    fn beyond_the_tail_bound_q_is_positive((o, m) in orbit_and_mode(4, 12)) {
        if weighted_norm(&o, m.entries()) > mode_bound(&o) {
            prop_assert!(q_form(&o, &m).unwrap().is_positive());
        }
    }

    #[test]
    fn euclidean_limit_a1_nonnegative((o, m) in orbit_and_mode(5, 4)) {
        let a1 = coefficients(&o, &m).unwrap().a1;
        prop_assert!(!a1.is_negative());
        prop_assert_eq!(a1.is_zero(), m.is_killing());
    }

    #[test]
    fn spectral_assembly_matches_q((o, m) in orbit_and_mode(4, 3)) {
        let s4 = o.sinh_sq().clone() * o.sinh_sq().clone();
        let spectral = second_variation_spectral(&o, &TrigMonomial::cos(m.clone())).unwrap();
        prop_assert_eq!(spectral * s4, q_form(&o, &m).unwrap());
    }

    #[test]
    fn laplacian_comparison_is_exact((o, m) in orbit_and_mode(4, 4)) {
        let (lhs, rhs) = laplacian_comparison_check(&o, &TrigMonomial::cos(m)).unwrap();
        prop_assert!(lhs.is_positive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hyperbolic_metric_determinant(o in orbit_strategy(5)) {
        let det = metric_hyperbolic(&o).determinant();
        let prod = o.radii_sq().iter().fold(Rational::one(), |a, r| a * r);
        prop_assert_eq!(det, o.cosh_sq() * prod);
        prop_assert!(metric_hyperbolic(&o).is_positive_definite());
    }

    #[test]
    fn float_track_tracks_exact((o, m) in orbit_and_mode(4, 3)) {
        let exact = q_form(&o, &m).unwrap();
        let float = q_form(&o.to_float(), &m).unwrap();
        let scale = coefficients(&o.to_float(), &m).unwrap().a1.abs() + 1.0;
        prop_assert!((float - lagstab::Scalar::to_f64(&exact)).abs() < 1e-9 * scale.max(float.abs()));
    }

    #[test]
    fn phi_round_trip(
        radii in prop::collection::vec(0.05f64..3.0, 1..=4),
        seed in prop::collection::vec(-3.1f64..3.1, 4),
    ) {
        let angles = &seed[..radii.len()];
        let w = torus_point(&radii, angles);
        let z = phi_inverse(&w);
        prop_assert!(z.iter().map(|c| c.norm_sqr()).sum::<f64>() < 1.0);
        let back = phi_forward(&z).unwrap();
        for (a, b) in w.iter().zip(&back) {
            prop_assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
        }
    }
}
