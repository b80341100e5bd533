use num::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Relative tolerance for `Σ s_i = 1` on the float track.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// A Lagrangian torus orbit `T(r_1, …, r_n)` in `C^n`, together with the
/// coordinates of its preimage in `CH^n`: the geodesic sphere of radius `r`
/// containing it and the moment-simplex point `s̃`.
///
/// The two coordinate systems are tied by `r_i² = sinh²r · s_i` and
/// `sinh²r = Σ r_i²`. Only squared radii are stored, so that an orbit given
/// by rational `(tanh²r, s̃)` stays exact: every algebraic quantity built on
/// top of it (`sinh²r = t/(1-t)`, metric entries, the stability form) is a
/// rational function of these.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSpec<S: Scalar> {
    radii_sq: Vec<S>,
    sinh_sq: S,
    tanh_sq: S,
    simplex: Vec<S>,
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if len != n {
        return Err(Error::DimensionMismatch { expected: n, found: len });
    }
    Ok(())
}

impl<S: Scalar> OrbitSpec<S> {
    /// Orbit through the Euclidean torus with the given circle radii.
    pub fn from_radii(n: usize, radii: &[S]) -> Result<Self> {
        check_len(n, radii.len())?;
        for (index, r) in radii.iter().enumerate() {
            if !(*r > S::zero()) {
                return Err(Error::NonPositiveRadius { index, value: r.to_value().to_string() });
            }
        }
        let radii_sq: Vec<S> = radii.iter().map(|r| r.clone() * r.clone()).collect();
        Ok(Self::from_radii_sq_unchecked(radii_sq))
    }

    /// Orbit given by its squared radii, which are exact whenever the orbit
    /// comes from rational `(tanh²r, s̃)`.
    pub fn from_squared_radii(n: usize, radii_sq: &[S]) -> Result<Self> {
        check_len(n, radii_sq.len())?;
        for (index, r) in radii_sq.iter().enumerate() {
            if !(*r > S::zero()) {
                return Err(Error::NonPositiveRadius { index, value: r.to_value().to_string() });
            }
        }
        Ok(Self::from_radii_sq_unchecked(radii_sq.to_vec()))
    }

    fn from_radii_sq_unchecked(radii_sq: Vec<S>) -> Self {
        let sinh_sq = radii_sq.iter().cloned().fold(S::zero(), |a, b| a + b);
        let simplex = radii_sq.iter().map(|r| r.clone() / sinh_sq.clone()).collect();
        let tanh_sq = sinh_sq.clone() / (S::one() + sinh_sq.clone());
        Self { radii_sq, sinh_sq, tanh_sq, simplex }
    }

    /// Orbit on the geodesic sphere with `tanh²r = tanh_sq` at the moment
    /// point `simplex`.
    ///
    /// The exact track requires `Σ s_i = 1` on the nose. The float track
    /// accepts a relative error of [`SIMPLEX_TOLERANCE`] and renormalizes.
    pub fn from_simplex(n: usize, tanh_sq: S, simplex: &[S]) -> Result<Self> {
        check_len(n, simplex.len())?;
        if !(tanh_sq > S::zero()) {
            return Err(Error::NonPositiveGeodesicRadius);
        }
        if tanh_sq >= S::one() {
            return Err(Error::TanhSquaredOutOfRange { value: tanh_sq.to_value().to_string() });
        }
        for (index, s) in simplex.iter().enumerate() {
            if !(*s > S::zero()) {
                return Err(Error::NonPositiveEntry { index, value: s.to_value().to_string() });
            }
        }
        let sum = simplex.iter().cloned().fold(S::zero(), |a, b| a + b);
        if !sum.approx_eq(&S::one(), SIMPLEX_TOLERANCE) {
            return Err(Error::SimplexNotNormalized { sum: sum.to_value().to_string() });
        }
        let simplex: Vec<S> = simplex.iter().map(|s| s.clone() / sum.clone()).collect();
        let sinh_sq = tanh_sq.clone() / (S::one() - tanh_sq.clone());
        let radii_sq = simplex.iter().map(|s| sinh_sq.clone() * s.clone()).collect();
        Ok(Self { radii_sq, sinh_sq, tanh_sq, simplex })
    }

    pub fn n(&self) -> usize {
        self.simplex.len()
    }

    pub fn simplex(&self) -> &[S] {
        &self.simplex
    }

    /// `r_i²`.
    pub fn radii_sq(&self) -> &[S] {
        &self.radii_sq
    }

    /// `t = tanh²r`, the single parameter through which the ambient
    /// curvature enters the stability form.
    pub fn tanh_sq(&self) -> &S {
        &self.tanh_sq
    }

    /// `sinh²r = Σ r_i² = t/(1-t)`.
    pub fn sinh_sq(&self) -> &S {
        &self.sinh_sq
    }

    /// `cosh²r = 1 + Σ r_i² = 1/(1-t)`.
    pub fn cosh_sq(&self) -> S {
        S::one() + self.sinh_sq.clone()
    }

    pub fn radii(&self) -> Vec<f64> {
        self.radii_sq.iter().map(|r| r.to_f64().sqrt()).collect()
    }

    /// Geodesic radius `r = arcsinh √(Σ r_i²)`.
    pub fn geodesic_radius(&self) -> f64 {
        self.sinh_sq.to_f64().sqrt().asinh()
    }

    pub fn min_simplex(&self) -> S {
        let mut it = self.simplex.iter();
        let first = it.next().expect("orbit has at least one coordinate").clone();
        it.fold(first, |m, s| if *s < m { s.clone() } else { m })
    }

    /// True for the Clifford (monotone) orbit, all radii equal.
    pub fn is_clifford(&self) -> bool {
        let first = &self.simplex[0];
        self.simplex.iter().all(|s| s.approx_eq(first, 1e-9))
    }

    pub fn to_float(&self) -> OrbitSpec<f64> {
        let conv = |v: &[S]| v.iter().map(Scalar::to_f64).collect::<Vec<_>>();
        OrbitSpec {
            radii_sq: conv(&self.radii_sq),
            sinh_sq: self.sinh_sq.to_f64(),
            tanh_sq: self.tanh_sq.to_f64(),
            simplex: conv(&self.simplex),
        }
    }
}

impl OrbitSpec<f64> {
    /// Float-track constructor from the geodesic radius `r` itself.
    pub fn from_geodesic_radius(n: usize, geodesic_radius: f64, simplex: &[f64]) -> Result<Self> {
        if geodesic_radius.is_nan() || geodesic_radius <= 0.0 {
            return Err(Error::NonPositiveGeodesicRadius);
        }
        let t = geodesic_radius.tanh().powi(2);
        let mut orbit = Self::from_simplex(n, t, simplex)?;
        // sinh² from r directly avoids the 1/(1-t) cancellation for large r
        let sinh_sq = geodesic_radius.sinh().powi(2);
        orbit.radii_sq = orbit.simplex.iter().map(|s| sinh_sq * s).collect();
        orbit.sinh_sq = sinh_sq;
        Ok(orbit)
    }
}

impl OrbitSpec<Rational> {
    /// Exact-track orbit from integer numerators over a common denominator:
    /// `s_i = weights_i / Σ weights`.
    pub fn from_weights(tanh_sq: Rational, weights: &[u64]) -> Result<Self> {
        let total: u64 = weights.iter().sum();
        if total == 0 {
            return Err(Error::NonPositiveEntry { index: 0, value: "0".into() });
        }
        let simplex: Vec<Rational> = weights
            .iter()
            .map(|&w| Rational::new((w as i64).into(), (total as i64).into()))
            .collect();
        if let Some(index) = simplex.iter().position(Zero::is_zero) {
            return Err(Error::NonPositiveEntry { index, value: "0".into() });
        }
        Self::from_simplex(weights.len(), tanh_sq, &simplex)
    }
}
