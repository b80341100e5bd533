//! The second variation of volume on Fourier modes, its finite truncation
//! and the certified stability scan.

mod analyze;
mod enumerate;
pub(crate) mod exact;
mod form;
mod killing;
mod mode;
mod predicate;

pub use analyze::{
    analyze, analyze_with, AnalyzeOptions, Regime, StabilityReport, Verdict, Witness, DEFAULT_ZERO_BAND,
};
pub use enumerate::{enumerate_modes, mode_bound, weighted_norm};
pub use form::{classify_mode, coefficients, q_form, ModeClass, Sign, StabilityCoefficients};
pub use killing::{killing_null_basis, KillingHamiltonian, KillingLabel};
pub use mode::Mode;
pub use predicate::{
    distinct_radii_count, instability_inequality, unstable_triple, volume_minimizing_predicate, VolumeMinimizing,
    RADIUS_EQUALITY_TOLERANCE,
};
