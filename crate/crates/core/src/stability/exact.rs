//! Integer evaluation of `Q` for rational orbits.
//!
//! With `1/s_i = W_i / L` for integers `W_i, L` and `t = a/b`,
//!
//! ```text
//! L² b² · Q = b² (B'² + C'² - 2A') - 2abL · D (B'D - C') + a² L² · D² (D² - 1)
//! ```
//!
//! where `A' = Σ m_i² W_i²`, `B' = Σ m_i² W_i`, `C' = Σ m_i W_i`. The scale
//! `L² b²` is a positive constant per orbit, so signs and comparisons between
//! modes are decided on the scaled integers. All arithmetic is checked; on
//! overflow the caller falls back to big rationals.

use num::integer::Integer;
use num::{BigInt, ToPrimitive};

use crate::geometry::OrbitSpec;
use crate::scalar::Rational;

#[derive(Clone, Debug)]
pub(crate) struct ScaledForm {
    weights: Vec<i128>,
    l: i128,
    a: i128,
    b: i128,
}

fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

impl ScaledForm {
    pub(crate) fn new(orbit: &OrbitSpec<Rational>) -> Option<Self> {
        let mut l = 1i128;
        let mut inv = Vec::with_capacity(orbit.n());
        for s in orbit.simplex() {
            // 1/s = denom/numer
            let p = to_i128(s.numer())?;
            let q = to_i128(s.denom())?;
            inv.push((q, p));
            l = l.checked_div(l.gcd(&p))?.checked_mul(p)?;
        }
        let weights = inv
            .iter()
            .map(|&(q, p)| q.checked_mul(l / p))
            .collect::<Option<Vec<_>>>()?;
        let t = orbit.tanh_sq();
        Some(Self { weights, l, a: to_i128(t.numer())?, b: to_i128(t.denom())? })
    }

    /// `L · Σ m_i²/s_i`.
    pub(crate) fn weighted_norm(&self, m: &[i64]) -> Option<i128> {
        let mut acc = 0i128;
        for (&mi, &w) in m.iter().zip(&self.weights) {
            let m2 = (mi as i128).checked_mul(mi as i128)?;
            acc = acc.checked_add(m2.checked_mul(w)?)?;
        }
        Some(acc)
    }

    /// `L² b² · Q(m)`.
    pub(crate) fn scaled_q(&self, m: &[i64]) -> Option<i128> {
        let (mut aa, mut bb, mut cc, mut d) = (0i128, 0i128, 0i128, 0i128);
        for (&mi, &w) in m.iter().zip(&self.weights) {
            if mi == 0 {
                continue;
            }
            let mi = mi as i128;
            let m2 = mi.checked_mul(mi)?;
            aa = aa.checked_add(m2.checked_mul(w.checked_mul(w)?)?)?;
            bb = bb.checked_add(m2.checked_mul(w)?)?;
            cc = cc.checked_add(mi.checked_mul(w)?)?;
            d += mi;
        }
        let a1 = bb.checked_mul(bb)?.checked_add(cc.checked_mul(cc)?)?.checked_sub(aa.checked_mul(2)?)?;
        let a2 = d.checked_mul(bb.checked_mul(d)?.checked_sub(cc)?)?;
        let d2 = d.checked_mul(d)?;
        let a3 = d2.checked_mul(d2 - 1)?;
        let b2 = self.b.checked_mul(self.b)?;
        let t1 = b2.checked_mul(a1)?;
        let t2 = self.a.checked_mul(self.b)?.checked_mul(self.l)?.checked_mul(a2)?.checked_mul(2)?;
        let al = self.a.checked_mul(self.l)?;
        let t3 = al.checked_mul(al)?.checked_mul(a3)?;
        t1.checked_sub(t2)?.checked_add(t3)
    }

    /// `L² b²`.
    pub(crate) fn scale(&self) -> Rational {
        let lb = BigInt::from(self.l) * BigInt::from(self.b);
        Rational::from_integer(&lb * &lb)
    }

    pub(crate) fn unscale(&self, scaled: i128) -> Rational {
        Rational::from_integer(BigInt::from(scaled)) / self.scale()
    }

    /// `L · bound`, rounded down; `Σ m_i²/s_i ≤ bound` iff the scaled norm
    /// is at most this.
    pub(crate) fn scaled_bound(&self, bound: &Rational) -> Option<i128> {
        let v = bound * Rational::from_integer(BigInt::from(self.l));
        to_i128(&v.floor().to_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{q_form, Mode};

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn agrees_with_rational_evaluation() {
        let o = OrbitSpec::from_simplex(3, q(1, 2), &[q(1, 100), q(99, 200), q(99, 200)]).unwrap();
        let f = ScaledForm::new(&o).unwrap();
        for m in [[-1, 1, 1], [1, 0, 0], [2, -3, 5], [0, 1, -1], [4, 4, 4]] {
            let exact = q_form(&o, &Mode::new(m.to_vec()).unwrap()).unwrap();
            assert_eq!(f.unscale(f.scaled_q(&m).unwrap()), exact, "{m:?}");
        }
        assert_eq!(f.unscale(f.scaled_q(&[-1, 1, 1]).unwrap()), q(-1800200, 9801));
    }

    #[test]
    fn scaled_bound_rounds_down() {
        let o = OrbitSpec::from_simplex(2, q(1, 2), &[q(1, 3), q(2, 3)]).unwrap();
        let f = ScaledForm::new(&o).unwrap();
        // L = lcm(1, 2) = 2, weights (6, 3)
        assert_eq!(f.weighted_norm(&[1, 2]), Some(18));
        assert_eq!(f.scaled_bound(&q(9, 1)), Some(18));
        assert_eq!(f.scaled_bound(&q(17, 2)), Some(17));
    }

    #[test]
    fn overflow_is_reported() {
        let o = OrbitSpec::from_simplex(2, q(1, 2), &[q(1, 3), q(2, 3)]).unwrap();
        let f = ScaledForm::new(&o).unwrap();
        assert_eq!(f.scaled_q(&[i64::MAX / 2, 1]), None);
    }
}
