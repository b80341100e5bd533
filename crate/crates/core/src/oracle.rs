//! Second variation rebuilt from differential operators on the flat torus.
//!
//! Two independent routes to the eigenvalue of the second variation on a
//! trigonometric monomial `u = cos(m·θ)` or `sin(m·θ)`:
//!
//! * [`second_variation_spectral`] assembles the integral term by term from
//!   the eigen-actions of `∂_i`, in the scalar type of the orbit (exact on
//!   rationals). It equals `Q(m)/sinh⁴r`.
//! * [`second_variation_quadrature`] evaluates the pointwise integrand of the
//!   stability criterion on a uniform angle grid and sums with the trapezoid
//!   rule, which is exact for trigonometric polynomials below Nyquist.
//!
//! Conventions: `Δ = -Σ ∂_i²/r_i²` has nonnegative spectrum;
//! `ξ = (1/sinh r) Σ ∂_i`; `J H(u) = -Σ ∂_k u / r_k²`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{metric_hyperbolic, OrbitSpec};
use crate::scalar::Scalar;
use crate::stability::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Cos,
    Sin,
}

/// `u = amplitude · cos(m·θ)` or `amplitude · sin(m·θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigMonomial {
    pub mode: Mode,
    pub phase: Phase,
    pub amplitude: f64,
}

impl TrigMonomial {
    pub fn new(mode: Mode, phase: Phase) -> Self {
        Self { mode, phase, amplitude: 1.0 }
    }

    pub fn cos(mode: Mode) -> Self {
        Self::new(mode, Phase::Cos)
    }

    pub fn sin(mode: Mode) -> Self {
        Self::new(mode, Phase::Sin)
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.amplitude *= factor;
        self
    }

    fn phase_angle(&self, angles: &[f64]) -> f64 {
        self.mode.entries().iter().zip(angles).map(|(&m, a)| m as f64 * a).sum()
    }

    /// `(u, u', u'')` as functions of the phase `φ = m·θ`.
    fn jet(&self, phi: f64) -> (f64, f64, f64) {
        let (s, c) = phi.sin_cos();
        let a = self.amplitude;
        match self.phase {
            Phase::Cos => (a * c, -a * s, -a * c),
            Phase::Sin => (a * s, a * c, -a * s),
        }
    }

    pub fn evaluate(&self, angles: &[f64]) -> f64 {
        self.jet(self.phase_angle(angles)).0
    }
}

fn check_dim<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<()> {
    if u.mode.dim() != orbit.n() {
        return Err(Error::DimensionMismatch { expected: orbit.n(), found: u.mode.dim() });
    }
    Ok(())
}

/// The coefficients `c_1 … c_4` of the criterion's cross terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl OracleConstants {
    /// `c1 = 2tanh²r, c2 = 2tanh r/cosh r, c3 = tanh⁴r, c4 = tanh²r/cosh²r`.
    pub fn from_geodesic_radius(r: f64) -> Self {
        let (th, ch) = (r.tanh(), r.cosh());
        Self { c1: 2.0 * th * th, c2: 2.0 * th / ch, c3: th.powi(4), c4: th * th / (ch * ch) }
    }

    /// Same constants from `t = tanh²r`, using `1/cosh²r = 1 - t`.
    pub fn from_tanh_sq(t: f64) -> Self {
        let sech_sq = 1.0 - t;
        Self { c1: 2.0 * t, c2: 2.0 * (t * sech_sq).sqrt(), c3: t * t, c4: t * sech_sq }
    }

    pub fn of<S: Scalar>(orbit: &OrbitSpec<S>) -> Self {
        Self::from_tanh_sq(orbit.tanh_sq().to_f64())
    }
}

/// `λ = Σ m_i²/r_i²`, so `Δu = λu`.
pub fn laplacian_eigenvalue<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<S> {
    check_dim(orbit, u)?;
    Ok(u
        .mode
        .entries()
        .iter()
        .zip(orbit.radii_sq())
        .filter(|(&m, _)| m != 0)
        .fold(S::zero(), |acc, (&m, r2)| acc + S::from_i64(m * m) / r2.clone()))
}

/// Action of `ξ` or `ξξ` on a monomial: `coefficient / sinh^sinh_power r`
/// times `output`.
///
/// `ξ cos(m·θ) = -(D/sinh r) sin(m·θ)` and `ξ sin(m·θ) = (D/sinh r) cos(m·θ)`
/// with `D = Σ m_i`; `ξξ` multiplies by `-D²/sinh²r`. The order-one factor
/// is irrational in general, hence the split form.
#[derive(Clone, Debug, PartialEq)]
pub struct XiAction<S> {
    pub coefficient: S,
    pub sinh_power: u32,
    pub output: Phase,
    /// `-1` when the image is the negated output monomial.
    pub sign: i8,
}

impl<S: Scalar> XiAction<S> {
    /// Signed factor in front of the output monomial.
    pub fn factor_f64(&self, orbit: &OrbitSpec<S>) -> f64 {
        let sinh = orbit.sinh_sq().to_f64().sqrt();
        self.sign as f64 * self.coefficient.to_f64() / sinh.powi(self.sinh_power as i32)
    }

    /// Signed factor, exactly, when it is rational (order two).
    pub fn exact_factor(&self, orbit: &OrbitSpec<S>) -> Option<S> {
        (self.sinh_power == 2)
            .then(|| S::from_i64(self.sign as i64) * self.coefficient.clone() / orbit.sinh_sq().clone())
    }
}

pub fn xi_derivative_eigenvalue<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial, order: u8) -> Result<XiAction<S>> {
    check_dim(orbit, u)?;
    let d = u.mode.sum();
    match order {
        1 => {
            let (output, sign) = match u.phase {
                Phase::Cos => (Phase::Sin, -1),
                Phase::Sin => (Phase::Cos, 1),
            };
            Ok(XiAction { coefficient: S::from_i64(d), sinh_power: 1, output, sign })
        }
        2 => Ok(XiAction { coefficient: S::from_i64(d * d), sinh_power: 2, output: u.phase, sign: -1 }),
        other => Err(Error::InvalidOrder(other)),
    }
}

/// Per-term coefficients of `∫u²` in the second variation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTerms<S> {
    /// Quartic operator term.
    pub quartic: S,
    /// `c1 ξξu·Δu - c2 ξu·JHu`.
    pub mixed: S,
    /// `c3 |ξξu|² - c4 (ξu)²`.
    pub reeb: S,
}

impl<S: Scalar> SpectralTerms<S> {
    pub fn total(&self) -> S {
        self.quartic.clone() + self.mixed.clone() + self.reeb.clone()
    }
}

pub fn second_variation_terms<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<SpectralTerms<S>> {
    check_dim(orbit, u)?;
    let m = u.mode.entries();
    let rs = orbit.radii_sq();
    let t = orbit.tanh_sq().clone();
    let sinh_sq = orbit.sinh_sq().clone();
    let cosh_sq = orbit.cosh_sq();
    let int = S::from_i64;

    let mut quartic = S::zero();
    for i in 0..m.len() {
        if m[i] == 0 {
            continue;
        }
        quartic = quartic + int(m[i].pow(4) - m[i] * m[i]) / (rs[i].clone() * rs[i].clone());
        for j in 0..m.len() {
            if j != i && m[j] != 0 {
                let num = m[i] * m[i] * m[j] * m[j] + m[i] * m[j];
                quartic = quartic + int(num) / (rs[i].clone() * rs[j].clone());
            }
        }
    }

    let d = int(u.mode.sum());
    let d2 = d.clone() * d.clone();
    let lambda = laplacian_eigenvalue(orbit, u)?;
    // Σ m_k / r_k², the eigen-factor of JH up to the phase flip
    let jh = m
        .iter()
        .zip(rs)
        .filter(|(&mk, _)| mk != 0)
        .fold(S::zero(), |acc, (&mk, r2)| acc + int(mk) / r2.clone());
    let two = int(2);
    // c1 = 2t; c2/sinh r = 2/cosh²r
    let mixed = -(two.clone() * t.clone() * d2.clone() * lambda / sinh_sq.clone())
        + two * d.clone() * jh / cosh_sq.clone();
    let reeb = t.clone() * t.clone() * d2.clone() * d2.clone() / (sinh_sq.clone() * sinh_sq.clone())
        - t * d2 / (sinh_sq * cosh_sq);
    Ok(SpectralTerms { quartic, mixed, reeb })
}

/// Coefficient of `∫u² dv` in the second variation; equals `Q(m)/sinh⁴r`.
pub fn second_variation_spectral<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<S> {
    Ok(second_variation_terms(orbit, u)?.total())
}

/// Points per angle needed for an alias-free trapezoid sum.
pub fn minimum_grid(mode: &Mode) -> usize {
    4 * (mode.max_abs() as usize + 1)
}

struct Frame {
    radii_sq: Vec<f64>,
    sinh: f64,
    t: f64,
    tanh_over_cosh: f64,
    sech_sq: f64,
}

impl Frame {
    fn new<S: Scalar>(orbit: &OrbitSpec<S>) -> Self {
        let t = orbit.tanh_sq().to_f64();
        let sech_sq = 1.0 - t;
        Self {
            radii_sq: orbit.radii_sq().iter().map(Scalar::to_f64).collect(),
            sinh: orbit.sinh_sq().to_f64().sqrt(),
            t,
            tanh_over_cosh: (t * sech_sq).sqrt(),
            sech_sq,
        }
    }

    /// The pointwise integrand, from first and second partials of `u`.
    fn integrand(&self, grad: &[f64], hess: impl Fn(usize, usize) -> f64) -> f64 {
        let n = grad.len();
        let mut lap = 0.0;
        let mut second_ff = 0.0;
        let mut jh = 0.0;
        let mut xi = 0.0;
        let mut xixi = 0.0;
        for i in 0..n {
            let r2 = self.radii_sq[i];
            lap -= hess(i, i) / r2;
            second_ff += grad[i] * grad[i] / (r2 * r2);
            jh -= grad[i] / r2;
            xi += grad[i];
            for j in 0..n {
                xixi += hess(i, j);
            }
        }
        xi /= self.sinh;
        xixi /= self.sinh * self.sinh;
        let t = self.t;
        lap * lap - 2.0 * second_ff + jh * jh + 2.0 * t * lap * xixi - 2.0 * self.tanh_over_cosh * xi * jh
            + t * t * xixi * xixi
            - t * self.sech_sq * xi * xi
    }
}

/// The integrand of the stability criterion at one point of the torus.
pub fn second_variation_integrand<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial, angles: &[f64]) -> Result<f64> {
    check_dim(orbit, u)?;
    if angles.len() != orbit.n() {
        return Err(Error::DimensionMismatch { expected: orbit.n(), found: angles.len() });
    }
    let frame = Frame::new(orbit);
    let m: Vec<f64> = u.mode.entries().iter().map(|&x| x as f64).collect();
    let (_, d1, d2) = u.jet(u.phase_angle(angles));
    let grad: Vec<f64> = m.iter().map(|mi| mi * d1).collect();
    Ok(frame.integrand(&grad, |i, j| m[i] * m[j] * d2))
}

/// Number of points of the `grid^n` tensor grid on which `m·θ` equals
/// `2πk/grid` modulo `2π`, for each `k`.
fn phase_classes(mode: &Mode, grid: usize) -> Vec<f64> {
    let mut counts = vec![0.0; grid];
    counts[0] = 1.0;
    for &mi in mode.entries() {
        let step = mi.rem_euclid(grid as i64) as usize;
        let mut next = vec![0.0; grid];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for j in 0..grid {
                next[(k + step * j) % grid] += c;
            }
        }
        counts = next;
    }
    counts
}

/// Trapezoid-rule value of `∫ J(u) dv / ∫ u_1² dv`, with `u_1` the
/// unit-amplitude monomial, on a uniform `grid^n` angle grid.
///
/// The integrand depends on `θ` only through `m·θ`, so grid points are
/// grouped by that phase before summing; the sum is the same as visiting
/// every point.
pub fn second_variation_quadrature<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial, grid: usize) -> Result<f64> {
    check_dim(orbit, u)?;
    let required = minimum_grid(&u.mode);
    if grid < required {
        return Err(Error::GridTooCoarse { grid, required });
    }
    let frame = Frame::new(orbit);
    let m: Vec<f64> = u.mode.entries().iter().map(|&x| x as f64).collect();
    let unit = TrigMonomial { amplitude: 1.0, ..u.clone() };
    let mut grad = vec![0.0; m.len()];
    let (mut num, mut den) = (0.0, 0.0);
    for (k, &weight) in phase_classes(&u.mode, grid).iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        let phi = TAU * k as f64 / grid as f64;
        let (_, d1, d2) = u.jet(phi);
        for (g, mi) in grad.iter_mut().zip(&m) {
            *g = mi * d1;
        }
        num += weight * frame.integrand(&grad, |i, j| m[i] * m[j] * d2);
        den += weight * unit.jet(phi).0.powi(2);
    }
    Ok(num / den)
}

/// Sum of the magnitudes of the individual integrand terms, as a
/// coefficient of `∫u²`. A scale for comparing values that may cancel to 0.
pub fn second_variation_scale<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<f64> {
    check_dim(orbit, u)?;
    let f = Frame::new(orbit);
    let m = u.mode.entries();
    let sinh_sq = f.sinh * f.sinh;
    let d = u.mode.sum() as f64;
    let lambda: f64 = m.iter().zip(&f.radii_sq).map(|(&x, r2)| (x * x) as f64 / r2).sum();
    let sff: f64 = m.iter().zip(&f.radii_sq).map(|(&x, r2)| (x * x) as f64 / (r2 * r2)).sum();
    let jh: f64 = m.iter().zip(&f.radii_sq).map(|(&x, r2)| x as f64 / r2).sum();
    let xi2 = d * d / sinh_sq;
    let t = f.t;
    Ok(lambda * lambda
        + 2.0 * sff
        + jh * jh
        + 2.0 * t * lambda * xi2
        + 2.0 * f.tanh_over_cosh * (d / f.sinh * jh).abs()
        + t * t * xi2 * xi2
        + t * f.sech_sq * xi2)
}

/// `(mᵀ G_1⁻¹ m, λ - t D²/sinh²r)`: the eigenvalue of the Laplacian of the
/// induced hyperbolic metric, computed directly and through the comparison
/// with the flat one. Equal exactly on rationals.
pub fn laplacian_comparison_check<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<(S, S)> {
    check_dim(orbit, u)?;
    let m: Vec<S> = u.mode.entries().iter().map(|&x| S::from_i64(x)).collect();
    let lhs = metric_hyperbolic(orbit).inverse_quadratic_form(&m)?;
    let xixi = xi_derivative_eigenvalue(orbit, u, 2)?.exact_factor(orbit).expect("order two is rational");
    let rhs = laplacian_eigenvalue(orbit, u)? + orbit.tanh_sq().clone() * xixi;
    Ok((lhs, rhs))
}

/// `(|∇_1 u|²_1, |∇_2 u|²_2 - tanh²r ξ(u)²)` at one point.
pub fn gradient_comparison_at<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial, angles: &[f64]) -> Result<(f64, f64)> {
    let ginv = GradientFrame::new(orbit, u)?;
    Ok(ginv.compare(u, angles))
}

/// Largest relative defect of the gradient comparison over the full
/// `grid^n` angle grid.
pub fn gradient_comparison_on_grid<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial, grid: usize) -> Result<f64> {
    let frame = GradientFrame::new(orbit, u)?;
    let n = orbit.n();
    let mut idx = vec![0usize; n];
    let mut angles = vec![0.0; n];
    let mut worst: f64 = 0.0;
    loop {
        for (a, &k) in angles.iter_mut().zip(&idx) {
            *a = TAU * k as f64 / grid as f64;
        }
        let (lhs, rhs) = frame.compare(u, &angles);
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE).max(frame.scale));
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(worst);
            }
            idx[pos] += 1;
            if idx[pos] < grid {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

struct GradientFrame {
    ginv: Vec<Vec<f64>>,
    radii_sq: Vec<f64>,
    sinh: f64,
    t: f64,
    /// `|∇_2 u|²` at the maximum of `u'²`, used as a floor for the
    /// relative defect.
    scale: f64,
}

impl GradientFrame {
    fn new<S: Scalar>(orbit: &OrbitSpec<S>, u: &TrigMonomial) -> Result<Self> {
        check_dim(orbit, u)?;
        let n = orbit.n();
        let g = metric_hyperbolic(orbit);
        let mut ginv = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            let col = g.solve(&e)?;
            for i in 0..n {
                ginv[i][j] = col[i].to_f64();
            }
        }
        let radii_sq: Vec<f64> = orbit.radii_sq().iter().map(Scalar::to_f64).collect();
        let scale = u.amplitude.powi(2)
            * u.mode.entries().iter().zip(&radii_sq).map(|(&m, r2)| (m * m) as f64 / r2).sum::<f64>();
        Ok(Self { ginv, radii_sq, sinh: orbit.sinh_sq().to_f64().sqrt(), t: orbit.tanh_sq().to_f64(), scale })
    }

    fn compare(&self, u: &TrigMonomial, angles: &[f64]) -> (f64, f64) {
        let (_, d1, _) = u.jet(u.phase_angle(angles));
        let du: Vec<f64> = u.mode.entries().iter().map(|&m| m as f64 * d1).collect();
        let n = du.len();
        let mut lhs = 0.0;
        for i in 0..n {
            for j in 0..n {
                lhs += du[i] * self.ginv[i][j] * du[j];
            }
        }
        let flat: f64 = du.iter().zip(&self.radii_sq).map(|(d, r2)| d * d / r2).sum();
        let xi: f64 = du.iter().sum::<f64>() / self.sinh;
        (lhs, flat - self.t * xi * xi)
    }
}
