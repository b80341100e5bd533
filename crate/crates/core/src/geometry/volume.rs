use std::f64::consts::TAU;

use crate::geometry::{metric_hyperbolic, OrbitSpec};
use crate::scalar::Scalar;

/// Volume of the orbit for the Bergman metric:
/// `(2π)^n (1 + Σ r_i²)^{1/2} Π r_i`.
pub fn volume_hyperbolic<S: Scalar>(orbit: &OrbitSpec<S>) -> f64 {
    volume_euclidean(orbit) * orbit.cosh_sq().to_f64().sqrt()
}

/// Volume of the flat torus `T(r_1, …, r_n)`: `(2π)^n Π r_i`.
pub fn volume_euclidean<S: Scalar>(orbit: &OrbitSpec<S>) -> f64 {
    let prod: f64 = orbit.radii().iter().product();
    TAU.powi(orbit.n() as i32) * prod
}

/// `(2π)^n √det G1`, the same volume through the induced metric matrix.
pub fn volume_from_metric<S: Scalar>(orbit: &OrbitSpec<S>) -> f64 {
    let det = metric_hyperbolic(orbit).determinant().to_f64();
    TAU.powi(orbit.n() as i32) * det.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_values() {
        let o = OrbitSpec::from_radii(2, &[1.0, 1.0]).unwrap();
        let v = volume_hyperbolic(&o);
        assert!((v - 4.0 * PI * PI * 3f64.sqrt()).abs() < 1e-12 * v);
        assert!((v - 68.378625).abs() < 1e-5);
        assert!((volume_euclidean(&o) - 4.0 * PI * PI).abs() < 1e-12);
        assert!((v / volume_euclidean(&o) - 3f64.sqrt()).abs() < 1e-14);

        let o = OrbitSpec::from_radii(1, &[1.0]).unwrap();
        assert!((volume_hyperbolic(&o) - 2.0 * PI * 2f64.sqrt()).abs() < 1e-13);
        let o = OrbitSpec::from_radii(1, &[2.0]).unwrap();
        assert!((volume_euclidean(&o) - 4.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn increasing_in_each_radius() {
        let base = [0.5, 1.0, 1.5];
        let v0 = volume_hyperbolic(&OrbitSpec::from_radii(3, &base).unwrap());
        for i in 0..3 {
            let mut r = base;
            r[i] += 0.01;
            assert!(volume_hyperbolic(&OrbitSpec::from_radii(3, &r).unwrap()) > v0);
        }
    }

    #[test]
    fn metric_route_agrees() {
        let o = OrbitSpec::from_radii(3, &[0.3, 1.1, 2.0]).unwrap();
        let a = volume_hyperbolic(&o);
        let b = volume_from_metric(&o);
        assert!((a - b).abs() <= 1e-12 * a);
    }
}
