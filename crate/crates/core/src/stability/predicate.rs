use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::OrbitSpec;
use crate::scalar::Scalar;

/// Relative band within which two float radii count as equal.
pub const RADIUS_EQUALITY_TOLERANCE: f64 = 1e-9;

/// `(1 + Σ r_l²)^{1/2} r_i < r_j r_k`, equivalently `s_i < tanh²r · s_j s_k`.
///
/// When this holds the mode `-e_i + e_j + e_k` has `Q < 0`, so the orbit is
/// Hamiltonian unstable. Indices are zero-based.
pub fn instability_inequality<S: Scalar>(orbit: &OrbitSpec<S>, i: usize, j: usize, k: usize) -> Result<bool> {
    let n = orbit.n();
    if n < 3 {
        return Err(Error::RequiresDimensionAtLeast3 { n });
    }
    for index in [i, j, k] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::IndicesNotDistinct);
    }
    let s = orbit.simplex();
    Ok(s[i] < orbit.tanh_sq().clone() * s[j].clone() * s[k].clone())
}

/// First triple `(i, j, k)` (lexicographic, `j < k`) satisfying the
/// instability inequality.
pub fn unstable_triple<S: Scalar>(orbit: &OrbitSpec<S>) -> Option<(usize, usize, usize)> {
    let n = orbit.n();
    if n < 3 {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i != j && i != k && instability_inequality(orbit, i, j, k).unwrap_or(false) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// `N(r_1, …, r_n)`, the number of distinct radii. Exact on rationals; on
/// floats, radii within [`RADIUS_EQUALITY_TOLERANCE`] of each other merge.
pub fn distinct_radii_count<S: Scalar>(orbit: &OrbitSpec<S>) -> usize {
    let mut r: Vec<S> = orbit.radii_sq().to_vec();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut count = 0;
    let mut anchor: Option<f64> = None;
    let mut anchor_exact: Option<S> = None;
    for x in r {
        let same = match S::TRACK {
            crate::scalar::Track::Exact => anchor_exact.as_ref() == Some(&x),
            crate::scalar::Track::Float => {
                let rx = x.to_f64().sqrt();
                anchor.is_some_and(|a| (rx - a).abs() <= RADIUS_EQUALITY_TOLERANCE * rx.max(a))
            }
        };
        if !same {
            count += 1;
            anchor = Some(x.to_f64().sqrt());
            anchor_exact = Some(x);
        }
    }
    count
}

/// What can be said about Hamiltonian volume minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VolumeMinimizing {
    /// `n ≥ 3` and a triple satisfies the instability inequality: the orbit
    /// is unstable, hence not volume minimizing.
    #[serde(rename = "No_UnstableWitness")]
    NoUnstableWitness,
    /// `n ≥ 3` with at least three distinct radii: a Hamiltonian isotopic
    /// torus with one radius shrunk has smaller volume.
    #[serde(rename = "No_RadiusMultiplicity")]
    NoRadiusMultiplicity,
    /// Neither sufficient condition applies.
    Unknown,
}

impl std::fmt::Display for VolumeMinimizing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VolumeMinimizing::NoUnstableWitness => "No_UnstableWitness",
            VolumeMinimizing::NoRadiusMultiplicity => "No_RadiusMultiplicity",
            VolumeMinimizing::Unknown => "Unknown",
        })
    }
}

pub fn volume_minimizing_predicate<S: Scalar>(orbit: &OrbitSpec<S>) -> VolumeMinimizing {
    if orbit.n() < 3 {
        return VolumeMinimizing::Unknown;
    }
    // both conditions are sufficient; multiplicity is reported first
    if distinct_radii_count(orbit) >= 3 {
        VolumeMinimizing::NoRadiusMultiplicity
    } else if unstable_triple(orbit).is_some() {
        VolumeMinimizing::NoUnstableWitness
    } else {
        VolumeMinimizing::Unknown
    }
}
