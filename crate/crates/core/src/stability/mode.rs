use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonzero integer vector `m ∈ Z^n \ {0}`, indexing the Fourier
/// eigenfunctions `cos(Σ m_i θ_i)` and `sin(Σ m_i θ_i)` of the flat torus.
///
/// Ordering is lexicographic on the entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Mode(Vec<i64>);

impl Mode {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().all(|&m| m == 0) {
            return Err(Error::ZeroMode);
        }
        Ok(Self(entries))
    }

    /// Unit vector `e_i` in dimension `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    /// `e_i - e_j` in dimension `n`.
    pub fn difference(n: usize, i: usize, j: usize) -> Self {
        assert_ne!(i, j, "difference of a unit vector with itself");
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = -1;
        Self(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `D = Σ m_i`.
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `Σ m_i²`.
    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|m| m * m).sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|m| m.abs()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|m| -m).collect())
    }

    /// Representative of `{m, -m}` whose first nonzero entry is positive.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&m| m != 0).is_some_and(|&m| m > 0)
    }

    /// `±e_i`.
    pub fn is_signed_unit(&self) -> bool {
        self.norm_sq() == 1
    }

    /// `±(e_i - e_j)` with `i ≠ j`.
    pub fn is_signed_difference(&self) -> bool {
        self.norm_sq() == 2 && self.sum() == 0
    }

    /// Modes whose Hamiltonians come from holomorphic Killing fields.
    pub fn is_killing(&self) -> bool {
        self.is_signed_unit() || self.is_signed_difference()
    }
}

impl TryFrom<Vec<i64>> for Mode {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Mode::new(v)
    }
}

impl From<Mode> for Vec<i64> {
    fn from(m: Mode) -> Self {
        m.0
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_rejected() {
        assert_eq!(Mode::new(vec![0, 0]), Err(Error::ZeroMode));
    }

    #[test]
    fn canonical_form() {
        let m = Mode::new(vec![0, -1, 1, 1]).unwrap();
        assert!(!m.is_canonical());
        assert_eq!(m.canonical().entries(), &[0, 1, -1, -1]);
        assert_eq!(m.canonical().canonical(), m.canonical());
    }

    #[test]
    fn killing_shapes() {
        assert!(Mode::unit(3, 2).is_killing());
        assert!(Mode::difference(3, 2, 0).is_killing());
        assert!(Mode::new(vec![-1, 0]).unwrap().is_killing());
        assert!(!Mode::new(vec![1, 1]).unwrap().is_killing());
        assert!(!Mode::new(vec![2, -2]).unwrap().is_killing());
    }

    #[test]
    fn display_and_conversion() {
        let m = Mode::new(vec![-1, 1, 1]).unwrap();
        assert_eq!(m.to_string(), "(-1,1,1)");
        assert_eq!(Vec::from(m), vec![-1, 1, 1]);
        assert_eq!(Mode::try_from(vec![0]), Err(Error::ZeroMode));
    }
}
