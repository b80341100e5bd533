//! Null modes generated by holomorphic Killing fields of `CH^n`.
//!
//! The isometry algebra `su(1, n)` has Hamiltonians (on the ball `B^n`)
//!
//! ```text
//! f_ij^c = Re(z_i z̄_j)/(1-|z|²)    f_ij^s = Im(z_i z̄_j)/(1-|z|²)
//! h_i    = (1+|z_i|²)/(2(1-|z|²))
//! f_i^c  = Re z_i/(1-|z|²)         f_i^s  = Im z_i/(1-|z|²)
//! ```
//!
//! Restricted to a torus orbit, `f_ij^{c,s}` are constant multiples of
//! `cos/sin(θ_i - θ_j)` (mode `e_i - e_j`) and `f_i^{c,s}` of `cos/sin θ_i`
//! (mode `e_i`). The `h_i` are constant on the orbit, so their Hamiltonian
//! vector fields are tangent and contribute no normal variation.

use num::complex::Complex64;
use serde::Serialize;

use crate::geometry::OrbitSpec;
use crate::scalar::Scalar;
use crate::stability::Mode;

/// One Killing Hamiltonian on the ball model. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KillingHamiltonian {
    /// `f_ij^c`
    PairCos { i: usize, j: usize },
    /// `f_ij^s`
    PairSin { i: usize, j: usize },
    /// `h_i`
    Rotation { i: usize },
    /// `f_i^c`
    TransvectionCos { i: usize },
    /// `f_i^s`
    TransvectionSin { i: usize },
}

impl KillingHamiltonian {
    pub fn evaluate(&self, z: &[Complex64]) -> f64 {
        let denom = 1.0 - z.iter().map(Complex64::norm_sqr).sum::<f64>();
        match *self {
            KillingHamiltonian::PairCos { i, j } => (z[i] * z[j].conj()).re / denom,
            KillingHamiltonian::PairSin { i, j } => (z[i] * z[j].conj()).im / denom,
            KillingHamiltonian::Rotation { i } => 0.5 * (1.0 + z[i].norm_sqr()) / denom,
            KillingHamiltonian::TransvectionCos { i } => z[i].re / denom,
            KillingHamiltonian::TransvectionSin { i } => z[i].im / denom,
        }
    }

    /// The constant `c` with `f|_orbit = c · u`, where `u` is the matching
    /// trigonometric monomial (`cos/sin(θ_i - θ_j)` or `cos/sin θ_i`).
    /// `None` for `h_i`, which is constant along the orbit.
    ///
    /// On the orbit `z_i = tanh r · √s_i · e^{iθ_i}` and `1-|z|² = 1/cosh²r`,
    /// so `f_ij = r_i r_j · u_ij` and `f_i = r_i cosh r · u_i`.
    pub fn restriction_factor<S: Scalar>(&self, orbit: &OrbitSpec<S>) -> Option<f64> {
        let r = orbit.radii();
        let cosh = orbit.cosh_sq().to_f64().sqrt();
        match *self {
            KillingHamiltonian::PairCos { i, j } | KillingHamiltonian::PairSin { i, j } => Some(r[i] * r[j]),
            KillingHamiltonian::TransvectionCos { i } | KillingHamiltonian::TransvectionSin { i } => {
                Some(r[i] * cosh)
            }
            KillingHamiltonian::Rotation { .. } => None,
        }
    }
}

/// The Hamiltonians paired with a Killing null mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KillingLabel {
    /// Mode `e_i`: `(f_i^c, f_i^s)`.
    Transvection { i: usize },
    /// Mode `e_i - e_j`, `i < j`: `(f_ij^c, f_ij^s)`.
    Pair { i: usize, j: usize },
}

impl KillingLabel {
    pub fn hamiltonians(&self) -> [KillingHamiltonian; 2] {
        match *self {
            KillingLabel::Transvection { i } => [
                KillingHamiltonian::TransvectionCos { i },
                KillingHamiltonian::TransvectionSin { i },
            ],
            KillingLabel::Pair { i, j } => {
                [KillingHamiltonian::PairCos { i, j }, KillingHamiltonian::PairSin { i, j }]
            }
        }
    }
}

impl std::fmt::Display for KillingLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KillingLabel::Transvection { i } => write!(f, "(f_{0}^c, f_{0}^s)", i + 1),
            KillingLabel::Pair { i, j } => write!(f, "(f_{0}{1}^c, f_{0}{1}^s)", i + 1, j + 1),
        }
    }
}

/// Killing-generated null modes, one canonical representative per `±` pair:
/// `e_i` for each `i`, then `e_i - e_j` for `i < j`.
pub fn killing_null_basis<S: Scalar>(orbit: &OrbitSpec<S>) -> Vec<(Mode, KillingLabel)> {
    let n = orbit.n();
    let mut out: Vec<(Mode, KillingLabel)> =
        (0..n).map(|i| (Mode::unit(n, i), KillingLabel::Transvection { i })).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((Mode::difference(n, i, j), KillingLabel::Pair { i, j }));
        }
    }
    out
}
