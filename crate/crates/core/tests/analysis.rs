use lagstab::stability::{killing_null_basis, Regime, VolumeMinimizing};
use lagstab::{analyze, OrbitSpec, Rational, Track, Value, Verdict};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

#[test]
fn clifford_orbits_are_rigid() {
    for n in 1..=5usize {
        for t in [q(1, 4), q(1, 2), q(3, 4)] {
            let o = OrbitSpec::from_simplex(n, t, &vec![q(1, n as i64); n]).unwrap();
            let r = analyze(&o).unwrap();
            assert_eq!(r.verdict, Verdict::CertifiedStable);
            assert!(r.rigid, "n={n}");
            assert_eq!(r.null_modes.len(), killing_null_basis(&o).len());
        }
    }
}

#[test]
fn exact_and_float_tracks_agree_away_from_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(2..=3);
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=12)).collect();
        let d = rng.gen_range(3..=12);
        let o = OrbitSpec::from_weights(q(rng.gen_range(1..d), d), &w).unwrap();
        let exact = analyze(&o).unwrap();
        let float = analyze(&o.to_float()).unwrap();
        assert_eq!(exact.arithmetic_track, Track::Exact);
        assert_eq!(float.arithmetic_track, Track::Float);
        assert_eq!(exact.verdict.is_stable(), float.verdict.is_stable(), "{w:?}");
        assert_eq!(exact.modes_checked, float.modes_checked);
        assert_eq!(exact.witness.map(|w| w.mode), float.witness.map(|w| w.mode));
        assert_eq!(exact.null_modes, float.null_modes);
    }
}

#[test]
fn unstable_triple_orbits_have_critical_witness() {
    // s_1 < t s_2 s_3 forces -e_1 + e_2 + e_3 negative
    let o = OrbitSpec::from_simplex(3, q(9, 10), &[q(1, 50), q(49, 100), q(49, 100)]).unwrap();
    let r = analyze(&o).unwrap();
    assert_eq!(r.verdict, Verdict::CertifiedUnstable);
    assert_eq!(r.regime, Regime::TripleInequality);
    assert_eq!(r.volume_minimizing, VolumeMinimizing::NoUnstableWitness);
    let w = r.witness.unwrap();
    assert_eq!(w.mode.norm_sq(), 3);
    assert!(matches!(w.q, Value::Exact(ref x) if *x < q(0, 1)));
}

#[test]
fn float_inputs_from_radii() {
    let o = OrbitSpec::from_radii(3, &[1.0, 2.0, 3.0]).unwrap();
    let r = analyze(&o).unwrap();
    assert_eq!(r.verdict, Verdict::NumericallyUnstable);
    assert_eq!(r.volume_minimizing, VolumeMinimizing::NoRadiusMultiplicity);
}
