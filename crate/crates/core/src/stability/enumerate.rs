//! Finite truncation of the mode lattice.
//!
//! Writing `A, B, C, D` as in [`StabilityCoefficients`](super::StabilityCoefficients),
//! the form completes to
//!
//! ```text
//! Q = (B - tD²)² + (C + tD)² - 2A - 2t²D².
//! ```
//!
//! Since `Σ s_i = 1`, Cauchy–Schwarz gives `D² ≤ B`, so `B - tD² ≥ (1-t)B > 0`.
//! Also `A ≤ B / min_i s_i`. Dropping the second square,
//!
//! ```text
//! Q ≥ (1-t)² B² - 2B/min_i s_i - 2t² B = B [(1-t)² B - 2/min_i s_i - 2t²],
//! ```
//!
//! which is strictly positive once `B > B_max = (2/min_i s_i + 2t²)/(1-t)²`.
//! Every mode that can make `Q` negative or zero therefore lies in the
//! ellipsoid `Σ m_i²/s_i ≤ B_max`, which is finite.

use crate::error::{Error, Result};
use crate::geometry::OrbitSpec;
use crate::scalar::Scalar;
use crate::stability::Mode;

/// `B_max = (2/min_i s_i + 2t²)/(1-t)²`; every mode with
/// `Σ m_i²/s_i > B_max` has `Q > 0`.
pub fn mode_bound<S: Scalar>(orbit: &OrbitSpec<S>) -> S {
    let two = S::from_i64(2);
    let t = orbit.tanh_sq().clone();
    let one_minus_t = S::one() - t.clone();
    (two.clone() / orbit.min_simplex() + two * t.clone() * t) / (one_minus_t.clone() * one_minus_t)
}

/// `Σ m_i²/s_i`.
pub fn weighted_norm<S: Scalar>(orbit: &OrbitSpec<S>, m: &[i64]) -> S {
    m.iter()
        .zip(orbit.simplex())
        .filter(|(&mi, _)| mi != 0)
        .fold(S::zero(), |acc, (&mi, s)| acc + S::from_i64(mi * mi) / s.clone())
}

/// Visits, in lexicographic order, every canonical (first nonzero entry
/// positive) integer vector that can satisfy `Σ m_i² w_i ≤ bound`.
///
/// The pruning runs in floating point with a relative slack, so the visited
/// set is a superset of the target; callers apply the exact test.
pub(crate) fn for_each_candidate(weights: &[f64], bound: f64, mut visit: impl FnMut(&[i64])) {
    let n = weights.len();
    let mut m = vec![0i64; n];
    let slack = |x: f64| x * (1.0 + 1e-9) + 1e-12;
    fn radius(rem: f64, w: f64) -> i64 {
        if rem <= 0.0 {
            return 0;
        }
        let mut r = (rem / w).sqrt().floor() as i64;
        while ((r + 1) as f64).powi(2) * w <= rem {
            r += 1;
        }
        r
    }
    fn rec(
        k: usize,
        leading_zero: bool,
        used: f64,
        weights: &[f64],
        bound: f64,
        m: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]),
        slack: &dyn Fn(f64) -> f64,
    ) {
        let n = weights.len();
        if k == n {
            if !leading_zero {
                visit(m);
            }
            return;
        }
        let r = radius(slack(bound) - used, weights[k]);
        let lo = if leading_zero { 0 } else { -r };
        for v in lo..=r {
            m[k] = v;
            let lz = leading_zero && v == 0;
            rec(k + 1, lz, used + (v * v) as f64 * weights[k], weights, bound, m, visit, slack);
        }
        m[k] = 0;
    }
    if n == 0 {
        return;
    }
    rec(0, true, 0.0, weights, bound, &mut m, &mut visit, &slack);
}

/// All modes with `Σ m_i²/s_i ≤ bound`, one representative per `{m, -m}`
/// pair (first nonzero entry positive), in lexicographic order.
pub fn enumerate_modes<S: Scalar>(orbit: &OrbitSpec<S>, bound: &S) -> Result<std::vec::IntoIter<Mode>> {
    if !(*bound > S::zero()) {
        return Err(Error::NonPositiveBound);
    }
    let weights: Vec<f64> = orbit.simplex().iter().map(|s| 1.0 / s.to_f64()).collect();
    let mut out = Vec::new();
    for_each_candidate(&weights, bound.to_f64(), |m| {
        if weighted_norm(orbit, m) <= *bound {
            out.push(Mode::new(m.to_vec()).expect("candidate is nonzero"));
        }
    });
    Ok(out.into_iter())
}
