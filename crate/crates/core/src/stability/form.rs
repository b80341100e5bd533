//! The stability quadratic form `Q_{n,r}(s̃, m)` and its lemma-based sign
//! classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::OrbitSpec;
use crate::scalar::Scalar;
use crate::stability::Mode;

/// Scalars attached to one `(orbit, mode)` pair.
///
/// ```text
/// A = Σ m_i²/s_i²   B = Σ m_i²/s_i   C = Σ m_i/s_i   D = Σ m_i
/// a1 = B² + C² - 2A
/// a2 = D (B D - C)
/// a3 = D² (D² - 1)
/// Q  = a1 - 2t a2 + t² a3,   t = tanh²r
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCoefficients<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: i64,
    pub t: S,
    pub a1: S,
    pub a2: S,
    pub a3: S,
}

impl<S: Scalar> StabilityCoefficients<S> {
    /// `a1 - 2t·a2 + t²·a3`.
    pub fn q(&self) -> S {
        let two = S::from_i64(2);
        self.a1.clone() - two * self.t.clone() * self.a2.clone()
            + self.t.clone() * self.t.clone() * self.a3.clone()
    }

    /// The same value through the completed-square form
    /// `(B - tD²)² + (C + tD)² - 2A - 2t²D²`, which is what the enumeration
    /// tail bound is derived from.
    pub fn q_completed_square(&self) -> S {
        let two = S::from_i64(2);
        let d = S::from_i64(self.d);
        let d2 = d.clone() * d.clone();
        let t = self.t.clone();
        let x = self.b.clone() - t.clone() * d2.clone();
        let y = self.c.clone() + t.clone() * d;
        x.clone() * x + y.clone() * y - two.clone() * self.a.clone() - two * t.clone() * t * d2
    }
}

fn check_dim<S: Scalar>(orbit: &OrbitSpec<S>, mode: &Mode) -> Result<()> {
    if mode.dim() != orbit.n() {
        return Err(Error::DimensionMismatch { expected: orbit.n(), found: mode.dim() });
    }
    Ok(())
}

pub fn coefficients<S: Scalar>(orbit: &OrbitSpec<S>, mode: &Mode) -> Result<StabilityCoefficients<S>> {
    check_dim(orbit, mode)?;
    let (mut a, mut b, mut c) = (S::zero(), S::zero(), S::zero());
    for (&m, s) in mode.entries().iter().zip(orbit.simplex()) {
        if m == 0 {
            continue;
        }
        let inv = S::one() / s.clone();
        let mm = S::from_i64(m);
        let m2 = S::from_i64(m * m);
        a = a + m2.clone() * inv.clone() * inv.clone();
        b = b + m2 * inv.clone();
        c = c + mm * inv;
    }
    let d = mode.sum();
    let ds = S::from_i64(d);
    let d2 = S::from_i64(d * d);
    let two = S::from_i64(2);
    let a1 = b.clone() * b.clone() + c.clone() * c.clone() - two * a.clone();
    let a2 = ds * (b.clone() * S::from_i64(d) - c.clone());
    let a3 = d2.clone() * (d2 - S::one());
    Ok(StabilityCoefficients { a, b, c, d, t: orbit.tanh_sq().clone(), a1, a2, a3 })
}

/// `Q_{n,r}(s̃, m)`. The orbit is Hamiltonian stable iff this is `≥ 0` for
/// every nonzero integer mode. Even in `m`.
pub fn q_form<S: Scalar>(orbit: &OrbitSpec<S>, mode: &Mode) -> Result<S> {
    Ok(coefficients(orbit, mode)?.q())
}

/// Sign information available without evaluating `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModeClass {
    /// `Σ m_i = 0`: `Q = a1 ≥ 0`, zero exactly on `±(e_i - e_j)`.
    SumZeroNonnegByLemma,
    /// `Σ m_i = ±1` and no entry equals `-Σ m_i`: `Q ≥ 0`, zero exactly on `±e_i`.
    SumPm1NonnegByLemma,
    /// `Σ m_i = ±1`, some entry `-Σ m_i`, some other entry of size `> 1`: `Q > 0`.
    SumPm1PositiveByLemma,
    /// `±(-e_i + e_j + e_k)`: `Q = 4/(s_j s_k) - 4t/s_i`, negative iff
    /// `s_i < t s_j s_k`.
    SumPm1CriticalFamily { negative: usize, positive: [usize; 2] },
    /// Anything else, including `|Σ m_i| ≥ 2`.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

pub(crate) fn classify_entries(m: &[i64]) -> ModeClass {
    let d: i64 = m.iter().sum();
    if d == 0 {
        return ModeClass::SumZeroNonnegByLemma;
    }
    if d.abs() != 1 {
        return ModeClass::General;
    }
    // normalize to Σ m_i = 1
    let flip = |x: i64| x * d;
    if !m.iter().any(|&x| flip(x) == -1) {
        return ModeClass::SumPm1NonnegByLemma;
    }
    if m.iter().any(|&x| flip(x) != -1 && x.abs() > 1) {
        return ModeClass::SumPm1PositiveByLemma;
    }
    let neg: Vec<usize> = (0..m.len()).filter(|&i| flip(m[i]) == -1).collect();
    let pos: Vec<usize> = (0..m.len()).filter(|&i| flip(m[i]) == 1).collect();
    if neg.len() == 1 && pos.len() == 2 {
        ModeClass::SumPm1CriticalFamily { negative: neg[0], positive: [pos[0], pos[1]] }
    } else {
        ModeClass::General
    }
}

/// Fast-path classification of a mode by the lemmas on `Σ m_i ∈ {0, ±1}`.
/// Whatever sign [`ModeClass::sign_claim`] derives from it must agree with
/// [`q_form`].
pub fn classify_mode<S: Scalar>(orbit: &OrbitSpec<S>, mode: &Mode) -> Result<ModeClass> {
    check_dim(orbit, mode)?;
    Ok(classify_entries(mode.entries()))
}

impl ModeClass {
    /// The sign of `Q` implied by the class, when the class decides it.
    pub fn sign_claim<S: Scalar>(&self, orbit: &OrbitSpec<S>, mode: &Mode) -> Option<Sign> {
        let zero_iff = |cond: bool| Some(if cond { Sign::Zero } else { Sign::Positive });
        match *self {
            ModeClass::SumZeroNonnegByLemma => zero_iff(mode.is_signed_difference()),
            ModeClass::SumPm1NonnegByLemma => zero_iff(mode.is_signed_unit()),
            ModeClass::SumPm1PositiveByLemma => Some(Sign::Positive),
            ModeClass::SumPm1CriticalFamily { negative, positive: [j, k] } => {
                let s = orbit.simplex();
                let rhs = orbit.tanh_sq().clone() * s[j].clone() * s[k].clone();
                Some(match s[negative].partial_cmp(&rhs) {
                    Some(std::cmp::Ordering::Less) => Sign::Negative,
                    Some(std::cmp::Ordering::Equal) => Sign::Zero,
                    _ => Sign::Positive,
                })
            }
            ModeClass::General => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num::BigInt;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn mode(v: &[i64]) -> Mode {
        Mode::new(v.to_vec()).unwrap()
    }

    fn witness_orbit() -> OrbitSpec<Rational> {
        OrbitSpec::from_simplex(3, q(1, 2), &[q(1, 100), q(99, 200), q(99, 200)]).unwrap()
    }

    #[test]
    fn difference_mode_on_half_half() {
        let o = OrbitSpec::from_simplex(2, q(1, 3), &[q(1, 2), q(1, 2)]).unwrap();
        let c = coefficients(&o, &mode(&[1, -1])).unwrap();
        assert_eq!((c.a.clone(), c.b.clone(), c.c.clone(), c.d), (q(8, 1), q(4, 1), q(0, 1), 0));
        assert_eq!((c.a1, c.a2, c.a3), (q(0, 1), q(0, 1), q(0, 1)));
    }

    #[test]
    fn one_dimensional_mode_two() {
        let o = OrbitSpec::from_simplex(1, q(1, 2), &[q(1, 1)]).unwrap();
        let c = coefficients(&o, &mode(&[2])).unwrap();
        assert_eq!((c.a.clone(), c.b.clone(), c.c.clone(), c.d), (q(4, 1), q(4, 1), q(2, 1), 2));
        assert_eq!((c.a1.clone(), c.a2.clone(), c.a3.clone()), (q(12, 1), q(12, 1), q(12, 1)));
        // 12(1 - t)² at t = 1/2
        assert_eq!(c.q(), q(3, 1));
    }

    #[test]
    fn single_circle_rotation_is_null() {
        let o = OrbitSpec::from_simplex(3, q(2, 7), &[q(1, 5), q(3, 10), q(1, 2)]).unwrap();
        let c = coefficients(&o, &mode(&[1, 0, 0])).unwrap();
        assert_eq!(c.a, q(25, 1));
        assert_eq!(c.b, q(5, 1));
        assert_eq!(c.c, q(5, 1));
        assert_eq!((c.a1, c.a2, c.a3), (q(0, 1), q(0, 1), q(0, 1)));
    }

    #[test]
    fn witness_value() {
        let o = witness_orbit();
        let v = q_form(&o, &mode(&[-1, 1, 1])).unwrap();
        assert_eq!(v, q(-1800200, 9801));
        assert_eq!(v, q(160000, 9801) - q(200, 1));
    }

    #[test]
    fn differences_vanish_everywhere() {
        let o = witness_orbit();
        for (i, j) in [(0, 1), (1, 2), (0, 2), (2, 0)] {
            assert_eq!(q_form(&o, &Mode::difference(3, i, j)).unwrap(), q(0, 1));
        }
    }

    #[test]
    fn completed_square_matches() {
        let o = witness_orbit();
        for m in [[3, -1, 2], [1, 1, 1], [0, 4, -7]] {
            let c = coefficients(&o, &mode(&m)).unwrap();
            assert_eq!(c.q(), c.q_completed_square());
        }
    }

    #[test]
    fn classification_examples() {
        let o = witness_orbit();
        assert_eq!(classify_mode(&o, &mode(&[1, -1, 0])).unwrap(), ModeClass::SumZeroNonnegByLemma);
        let crit = classify_mode(&o, &mode(&[-1, 1, 1])).unwrap();
        assert_eq!(crit, ModeClass::SumPm1CriticalFamily { negative: 0, positive: [1, 2] });
        assert_eq!(crit.sign_claim(&o, &mode(&[-1, 1, 1])), Some(Sign::Negative));
        // global sign flip lands in the same family
        assert_eq!(classify_mode(&o, &mode(&[1, -1, -1])).unwrap(), crit);
        assert_eq!(classify_mode(&o, &mode(&[-1, 2, 0])).unwrap(), ModeClass::SumPm1PositiveByLemma);
        assert_eq!(classify_mode(&o, &mode(&[1, 0, 0])).unwrap(), ModeClass::SumPm1NonnegByLemma);
        assert_eq!(classify_mode(&o, &mode(&[1, 1, 0])).unwrap(), ModeClass::General);
        assert!(matches!(classify_mode(&o, &mode(&[1, 1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn two_pairs_family_is_general() {
        let m = [-1, -1, 1, 1, 1];
        assert_eq!(classify_entries(&m), ModeClass::General);
    }
}
