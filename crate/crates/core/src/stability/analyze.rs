use std::any::Any;
use std::fmt;

use num::{Signed, Zero};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::OrbitSpec;
use crate::scalar::{Rational, Scalar, Track, Value};
use crate::stability::enumerate::{for_each_candidate, mode_bound, weighted_norm};
use crate::stability::exact::ScaledForm;
use crate::stability::form::{classify_entries, coefficients, q_form, Sign};
use crate::stability::killing::killing_null_basis;
use crate::stability::predicate::{unstable_triple, volume_minimizing_predicate, VolumeMinimizing};
use crate::stability::Mode;

/// Float-track zero band: `|Q| ≤ band · (1 + |a1|)` counts as `Q = 0`.
pub const DEFAULT_ZERO_BAND: f64 = 1e-9;

const FLOAT_BOUND_SLACK: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions<S> {
    /// Enumerate up to this bound instead of [`mode_bound`]. May only
    /// enlarge the certified bound.
    pub bound_override: Option<S>,
    pub zero_band: f64,
}

impl<S> Default for AnalyzeOptions<S> {
    fn default() -> Self {
        Self { bound_override: None, zero_band: DEFAULT_ZERO_BAND }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    CertifiedStable,
    CertifiedUnstable,
    NumericallyStable,
    NumericallyUnstable,
}

impl Verdict {
    pub fn is_stable(self) -> bool {
        matches!(self, Verdict::CertifiedStable | Verdict::NumericallyStable)
    }

    pub fn is_certified(self) -> bool {
        matches!(self, Verdict::CertifiedStable | Verdict::CertifiedUnstable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which known result, if any, already decides the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n ≤ 2`: every orbit is stable and rigid.
    LowDimension,
    /// All radii equal: stable and rigid for every `n` and `r`.
    Clifford,
    /// `n ≥ 3` with a triple `s_i < t s_j s_k`: unstable.
    TripleInequality,
    /// None of the above. A stable verdict here is not backed by a theorem.
    Open,
}

impl Regime {
    pub fn of<S: Scalar>(orbit: &OrbitSpec<S>) -> Self {
        if orbit.n() <= 2 {
            Regime::LowDimension
        } else if orbit.is_clifford() {
            Regime::Clifford
        } else if unstable_triple(orbit).is_some() {
            Regime::TripleInequality
        } else {
            Regime::Open
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::LowDimension => "low_dimension",
            Regime::Clifford => "clifford",
            Regime::TripleInequality => "triple_inequality",
            Regime::Open => "open",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub mode: Mode,
    pub q: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Negative mode of least `Σ m_i²`, ties broken by the lexicographically
    /// smallest of `±m`.
    pub witness: Option<Witness>,
    pub enumeration_bound: Value,
    pub modes_checked: u64,
    /// Canonical representatives of all enumerated modes with `Q = 0`.
    pub null_modes: Vec<Mode>,
    /// Stable, with null modes exactly the Killing modes `e_i`, `e_i - e_j`.
    pub rigid: bool,
    pub volume_minimizing: VolumeMinimizing,
    pub arithmetic_track: Track,
    /// Smallest `Q` over the enumerated modes.
    pub min_q: Value,
    pub regime: Regime,
}

impl StabilityReport {
    /// A stable verdict that no known theorem covers.
    pub fn beyond_known_results(&self) -> bool {
        self.verdict.is_stable() && self.regime == Regime::Open
    }
}

struct Scan<V> {
    modes_checked: u64,
    null_modes: Vec<Mode>,
    witness: Option<(i64, Vec<i64>, V)>,
    min_q: Option<V>,
}

enum ScanError {
    Overflow,
    Fail(Error),
}

/// Walks the candidate lattice. `in_bound` and `eval` return `None` on
/// arithmetic overflow, which aborts the scan.
fn scan<S: Scalar, V: PartialOrd + Clone>(
    orbit: &OrbitSpec<S>,
    bound: f64,
    lenient: bool,
    mut in_bound: impl FnMut(&[i64]) -> Option<bool>,
    mut eval: impl FnMut(&[i64]) -> Option<(Sign, V)>,
) -> std::result::Result<Scan<V>, ScanError> {
    let weights: Vec<f64> = orbit.simplex().iter().map(|s| 1.0 / s.to_f64()).collect();
    let mut state = Scan { modes_checked: 0, null_modes: Vec::new(), witness: None, min_q: None };
    let mut failure: Option<ScanError> = None;
    for_each_candidate(&weights, bound, |m| {
        if failure.is_some() {
            return;
        }
        match in_bound(m) {
            None => {
                failure = Some(ScanError::Overflow);
                return;
            }
            Some(false) => return,
            Some(true) => {}
        }
        let Some((sign, value)) = eval(m) else {
            failure = Some(ScanError::Overflow);
            return;
        };
        state.modes_checked += 1;
        let mode = Mode::new(m.to_vec()).expect("candidate is nonzero");
        if let Some(claim) = classify_entries(m).sign_claim(orbit, &mode) {
            let agrees = claim == sign
                || (lenient && (sign == Sign::Zero || claim == Sign::Zero) && claim != sign.flip());
            if !agrees {
                failure = Some(ScanError::Fail(Error::FastPathDisagreement { mode: mode.to_string() }));
                return;
            }
        }
        if state.min_q.as_ref().is_none_or(|cur| value < *cur) {
            state.min_q = Some(value.clone());
        }
        match sign {
            Sign::Zero => state.null_modes.push(mode),
            Sign::Negative => {
                // canonical m has its first nonzero entry positive, so -m is
                // the lexicographically smaller of the pair
                let rep: Vec<i64> = m.iter().map(|x| -x).collect();
                let norm = mode.norm_sq();
                let better = match &state.witness {
                    None => true,
                    Some((bn, bm, _)) => (norm, &rep) < (*bn, bm),
                };
                if better {
                    state.witness = Some((norm, rep, value));
                }
            }
            Sign::Positive => {}
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(state),
    }
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn of_i128(x: i128) -> Sign {
        match x.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

fn finish<V>(scan: Scan<V>, to_value: impl Fn(&V) -> Value) -> (u64, Vec<Mode>, Option<Witness>, Value) {
    let witness = scan.witness.map(|(_, m, v)| Witness {
        mode: Mode::new(m).expect("witness is nonzero"),
        q: to_value(&v),
    });
    let min_q = to_value(scan.min_q.as_ref().expect("the bound always admits e_1"));
    (scan.modes_checked, scan.null_modes, witness, min_q)
}

type Scanned = (u64, Vec<Mode>, Option<Witness>, Value);

fn scan_exact(orbit: &OrbitSpec<Rational>, bound: &Rational) -> Result<Scanned> {
    let bound_f = bound.to_f64();
    if let Some(form) = ScaledForm::new(orbit) {
        if let Some(limit) = form.scaled_bound(bound) {
            let res = scan(
                orbit,
                bound_f,
                false,
                |m| form.weighted_norm(m).map(|b| b <= limit),
                |m| form.scaled_q(m).map(|q| (Sign::of_i128(q), q)),
            );
            match res {
                Ok(s) => return Ok(finish(s, |&v| Value::Exact(form.unscale(v)))),
                Err(ScanError::Fail(e)) => return Err(e),
                Err(ScanError::Overflow) => {}
            }
        }
    }
    let res = scan(
        orbit,
        bound_f,
        false,
        |m| Some(weighted_norm(orbit, m) <= *bound),
        |m| {
            let q = q_form(orbit, &Mode::new(m.to_vec()).ok()?).ok()?;
            let sign = Sign::of_i128(if q.is_zero() {
                0
            } else if q.is_negative() {
                -1
            } else {
                1
            });
            Some((sign, q))
        },
    );
    match res {
        Ok(s) => Ok(finish(s, |v: &Rational| Value::Exact(v.clone()))),
        Err(ScanError::Fail(e)) => Err(e),
        Err(ScanError::Overflow) => unreachable!("big rational evaluation cannot overflow"),
    }
}

fn scan_generic<S: Scalar>(orbit: &OrbitSpec<S>, bound: &S, zero_band: f64) -> Result<Scanned> {
    let res = scan(
        orbit,
        bound.to_f64(),
        S::TRACK == Track::Float,
        |m| {
            let norm = weighted_norm(orbit, m);
            Some(match S::TRACK {
                // keep modes that rounding puts just outside the ellipsoid
                Track::Float => norm.to_f64() <= bound.to_f64() * (1.0 + FLOAT_BOUND_SLACK),
                Track::Exact => norm <= *bound,
            })
        },
        |m| {
            let c = coefficients(orbit, &Mode::new(m.to_vec()).ok()?).ok()?;
            let q = c.q();
            let sign = match S::TRACK {
                Track::Float => {
                    let band = zero_band * (1.0 + c.a1.to_f64().abs());
                    let x = q.to_f64();
                    if x.abs() <= band {
                        Sign::Zero
                    } else if x < 0.0 {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                }
                Track::Exact => {
                    if q.is_zero() {
                        Sign::Zero
                    } else if q.is_negative() {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                }
            };
            Some((sign, q))
        },
    );
    match res {
        Ok(s) => Ok(finish(s, Scalar::to_value)),
        Err(ScanError::Fail(e)) => Err(e),
        Err(ScanError::Overflow) => unreachable!("generic evaluation does not report overflow"),
    }
}

pub fn analyze<S: Scalar>(orbit: &OrbitSpec<S>) -> Result<StabilityReport> {
    analyze_with(orbit, &AnalyzeOptions::default())
}

/// Certified stability analysis.
///
/// Every mode in the ellipsoid `Σ m_i²/s_i ≤ B_max` is classified by the
/// lemma fast paths and evaluated; modes outside it have `Q > 0`. On the
/// exact track the verdicts are proofs; on the float track they are
/// labelled numerical.
pub fn analyze_with<S: Scalar>(orbit: &OrbitSpec<S>, options: &AnalyzeOptions<S>) -> Result<StabilityReport> {
    let certified = mode_bound(orbit);
    let bound = match &options.bound_override {
        Some(b) if *b < certified => {
            return Err(Error::BoundTooSmall {
                requested: b.to_value().to_string(),
                required: certified.to_value().to_string(),
            })
        }
        Some(b) => b.clone(),
        None => certified,
    };

    let exact = (orbit as &dyn Any).downcast_ref::<OrbitSpec<Rational>>();
    let (modes_checked, null_modes, witness, min_q) = match exact {
        Some(o) => {
            let b = (&bound as &dyn Any).downcast_ref::<Rational>().expect("same scalar type");
            scan_exact(o, b)?
        }
        None => scan_generic(orbit, &bound, options.zero_band)?,
    };

    let track = S::TRACK;
    let verdict = match (witness.is_some(), track) {
        (true, Track::Exact) => Verdict::CertifiedUnstable,
        (true, Track::Float) => Verdict::NumericallyUnstable,
        (false, Track::Exact) => Verdict::CertifiedStable,
        (false, Track::Float) => Verdict::NumericallyStable,
    };
    let mut killing: Vec<Mode> = killing_null_basis(orbit).into_iter().map(|(m, _)| m).collect();
    killing.sort();
    let mut nulls = null_modes.clone();
    nulls.sort();
    let rigid = verdict.is_stable() && nulls == killing;

    Ok(StabilityReport {
        verdict,
        witness,
        enumeration_bound: bound.to_value(),
        modes_checked,
        null_modes,
        rigid,
        volume_minimizing: volume_minimizing_predicate(orbit),
        arithmetic_track: track,
        min_q,
        regime: Regime::of(orbit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn witness_orbit() -> OrbitSpec<Rational> {
        OrbitSpec::from_simplex(3, q(1, 2), &[q(1, 100), q(99, 200), q(99, 200)]).unwrap()
    }

    #[test]
    fn witness_orbit_is_certified_unstable() {
        let r = analyze(&witness_orbit()).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedUnstable);
        let w = r.witness.unwrap();
        assert_eq!(w.mode.entries(), &[-1, 1, 1]);
        assert_eq!(w.q, Value::Exact(q(-1800200, 9801)));
        assert!(!r.rigid);
        assert_eq!(r.regime, Regime::TripleInequality);
        assert_eq!(r.volume_minimizing, VolumeMinimizing::NoUnstableWitness);
    }

    #[test]
    fn float_track_matches() {
        let r = analyze(&witness_orbit().to_float()).unwrap();
        assert_eq!(r.verdict, Verdict::NumericallyUnstable);
        assert_eq!(r.witness.as_ref().unwrap().mode.entries(), &[-1, 1, 1]);
        let qv = r.witness.unwrap().q.to_f64();
        assert!((qv + 1800200.0 / 9801.0).abs() < 1e-9);
    }

    #[test]
    fn clifford_four_is_rigid() {
        let o = OrbitSpec::from_simplex(4, q(1, 3), &vec![q(1, 4); 4]).unwrap();
        let r = analyze(&o).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedStable);
        assert_eq!(r.null_modes.len(), 10);
        assert!(r.rigid);
        assert_eq!(r.regime, Regime::Clifford);
        assert_eq!(r.min_q, Value::Exact(q(0, 1)));
    }

    #[test]
    fn two_dimensional_orbits_are_stable() {
        for (w, t) in [([1u64, 1], q(1, 2)), ([1, 9], q(9, 10)), ([7, 3], q(1, 100))] {
            let o = OrbitSpec::from_weights(t, &w).unwrap();
            let r = analyze(&o).unwrap();
            assert_eq!(r.verdict, Verdict::CertifiedStable);
            assert!(r.rigid);
        }
        let r = analyze(&OrbitSpec::from_radii(2, &[1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::NumericallyStable);
        assert!(r.rigid);
    }

    #[test]
    fn bound_override_may_only_enlarge() {
        let o = witness_orbit();
        let small = AnalyzeOptions { bound_override: Some(q(1, 1)), ..Default::default() };
        assert!(matches!(analyze_with(&o, &small), Err(Error::BoundTooSmall { .. })));
        let big = AnalyzeOptions { bound_override: Some(mode_bound(&o) * q(2, 1)), ..Default::default() };
        let r = analyze_with(&o, &big).unwrap();
        assert!(r.modes_checked > analyze(&o).unwrap().modes_checked);
        assert_eq!(r.witness, analyze(&o).unwrap().witness);
    }

    #[test]
    fn big_denominators_fall_back_to_rationals() {
        let huge = BigInt::from(10).pow(30);
        let s1 = Rational::new(BigInt::from(1), huge.clone()) + q(1, 3);
        let s2 = q(1, 1) - s1.clone();
        let o = OrbitSpec::from_simplex(2, q(1, 2), &[s1, s2]).unwrap();
        let r = analyze(&o).unwrap();
        assert_eq!(r.verdict, Verdict::CertifiedStable);
        assert!(r.rigid);
    }
}
