use crate::error::{Error, Result};
use crate::geometry::OrbitSpec;
use crate::scalar::Scalar;

/// Components of an induced metric in the angle coordinates `(θ_1, …, θ_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> MetricMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Leading principal minors `Δ_1, …, Δ_n`.
    pub fn leading_minors(&self) -> Vec<S> {
        (1..=self.n).map(|k| self.sub_block(k).determinant()).collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_minors().iter().all(|x| *x > S::zero())
    }

    fn sub_block(&self, k: usize) -> Self {
        let entries = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect();
        Self { n: k, entries }
    }

    /// Determinant by Gaussian elimination with pivoting on the largest
    /// magnitude (harmless on the exact track, needed on the float track).
    pub fn determinant(&self) -> S {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a[x * n + col]
                        .abs()
                        .partial_cmp(&a[y * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty range");
            if a[pivot * n + col].is_zero() {
                return S::zero();
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for row in col + 1..n {
                let factor = a[row * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    let v = a[row * n + k].clone() - factor.clone() * a[col * n + k].clone();
                    a[row * n + k] = v;
                }
            }
        }
        det
    }

    /// Solves `G x = rhs`. `G` must be nonsingular.
    pub fn solve(&self, rhs: &[S]) -> Result<Vec<S>> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rhs.len() });
        }
        let w = n + 1;
        let mut a: Vec<S> = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend(self.entries[i * n..(i + 1) * n].iter().cloned());
            a.push(rhs[i].clone());
        }
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| {
                    a[x * w + col]
                        .abs()
                        .partial_cmp(&a[y * w + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty range");
            for k in 0..w {
                a.swap(pivot * w + k, col * w + k);
            }
            let p = a[col * w + col].clone();
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a[row * w + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in col..w {
                    let v = a[row * w + k].clone() - factor.clone() * a[col * w + k].clone();
                    a[row * w + k] = v;
                }
            }
        }
        Ok((0..n).map(|i| a[i * w + n].clone() / a[i * w + i].clone()).collect())
    }

    /// `vᵀ G⁻¹ v`: the squared length of the covector `v` in the dual metric.
    pub fn inverse_quadratic_form(&self, v: &[S]) -> Result<S> {
        let x = self.solve(v)?;
        Ok(v.iter().zip(&x).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// `vᵀ G v`.
    pub fn quadratic_form(&self, v: &[S]) -> Result<S> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.len() });
        }
        let mut acc = S::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc + v[i].clone() * self.get(i, j).clone() * v[j].clone();
            }
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { n: self.n, entries }
    }
}

/// Flat metric `g_2` of `T(r_1, …, r_n) ⊂ C^n`: `diag(r_1², …, r_n²)`.
pub fn metric_euclidean<S: Scalar>(orbit: &OrbitSpec<S>) -> MetricMatrix<S> {
    let n = orbit.n();
    let mut entries = vec![S::zero(); n * n];
    for (i, r2) in orbit.radii_sq().iter().enumerate() {
        entries[i * n + i] = r2.clone();
    }
    MetricMatrix { n, entries }
}

/// Metric `g_1` induced on the orbit by the Bergman metric of `CH^n(-4)`,
/// written in the same angle coordinates.
///
/// On the geodesic sphere the two metrics differ only along the Reeb
/// direction: `|X|_1² = |X|_2² + sinh²r · η_2(X)²`. With
/// `ξ_2 = (1/sinh r) Σ ∂_i` and `g_2(∂_i, ∂_j) = r_i² δ_ij` one has
/// `η_2(∂_j) = r_j² / sinh r`, hence
///
/// ```text
/// G1[i][j] = r_i² δ_ij + r_i² r_j²
/// ```
///
/// a rank-one update of `g_2` with `det G1 = (1 + Σ r_i²) Π r_i²`.
pub fn metric_hyperbolic<S: Scalar>(orbit: &OrbitSpec<S>) -> MetricMatrix<S> {
    let n = orbit.n();
    let r2 = orbit.radii_sq();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = r2[i].clone() * r2[j].clone();
            if i == j {
                v = v + r2[i].clone();
            }
            entries.push(v);
        }
    }
    MetricMatrix { n, entries }
}
