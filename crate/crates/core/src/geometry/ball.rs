//! The ball model `B^n` of `CH^n(-4)` and the symplectomorphism onto `C^n`.

use num::complex::Complex64;

use crate::error::{Error, Result};

fn norm_sq(z: &[Complex64]) -> f64 {
    z.iter().map(Complex64::norm_sqr).sum()
}

/// `Φ(z) = z / √(1 - |z|²)`, a `U(n)`-equivariant symplectic diffeomorphism
/// from the open unit ball onto `C^n`. It sends the geodesic sphere of
/// radius `r` (Euclidean radius `tanh r`) onto the round sphere of radius
/// `sinh r`.
pub fn phi_forward(z: &[Complex64]) -> Result<Vec<Complex64>> {
    let nsq = norm_sq(z);
    if nsq >= 1.0 || nsq.is_nan() {
        return Err(Error::PointOutsideBall { norm: nsq.sqrt() });
    }
    let scale = (1.0 - nsq).sqrt().recip();
    Ok(z.iter().map(|w| w * scale).collect())
}

/// `Φ⁻¹(w) = w / √(1 + |w|²)`.
pub fn phi_inverse(w: &[Complex64]) -> Vec<Complex64> {
    let scale = (1.0 + norm_sq(w)).sqrt().recip();
    w.iter().map(|x| x * scale).collect()
}

/// Point `(r_1 e^{iθ_1}, …, r_n e^{iθ_n})` of the Euclidean torus.
pub fn torus_point(radii: &[f64], angles: &[f64]) -> Vec<Complex64> {
    radii.iter().zip(angles).map(|(&r, &th)| Complex64::from_polar(r, th)).collect()
}
