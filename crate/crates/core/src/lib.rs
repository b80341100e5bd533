//! Hamiltonian stability of Lagrangian torus orbits in complex hyperbolic
//! space `CH^n`.
//!
//! An orbit of the standard `T^n` action is fixed by its squared radii
//! `r_i² = sinh²r · s_i`, where `r` is the geodesic distance to the fixed
//! point and `s` lies in the open moment simplex. The second variation of
//! volume is diagonal on Fourier modes `m ∈ Z^n`, with eigenvalue a quartic
//! form `Q(m)`. Only finitely many modes can make `Q ≤ 0`, so a scan over an
//! explicit ellipsoid decides stability. Run it on [`Rational`] for a proof,
//! or on `f64` for speed.
//!
//! ```
//! use lagstab::{analyze, OrbitSpec, Rational, Verdict};
//!
//! let half = Rational::new(1.into(), 2.into());
//! let orbit = OrbitSpec::from_simplex(
//!     3,
//!     half.clone(),
//!     &[Rational::new(1.into(), 100.into()), Rational::new(99.into(), 200.into()), Rational::new(99.into(), 200.into())],
//! )
//! .unwrap();
//! let report = analyze(&orbit).unwrap();
//! assert_eq!(report.verdict, Verdict::CertifiedUnstable);
//! assert_eq!(report.witness.unwrap().mode.to_string(), "(-1,1,1)");
//! ```

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod scalar;
pub mod stability;

pub use error::{Error, Result};
pub use geometry::OrbitSpec;
pub use scalar::{Rational, Scalar, Track, Value};
pub use stability::{analyze, analyze_with, AnalyzeOptions, Mode, StabilityReport, Verdict};
