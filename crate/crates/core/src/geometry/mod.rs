//! Orbit parametrizations, the ball-to-`C^n` map, induced metrics and
//! volumes.
//!
//! The holomorphic sectional curvature is fixed at `-4` throughout.

mod ball;
mod metric;
mod orbit;
mod volume;

pub use ball::{phi_forward, phi_inverse, torus_point};
pub use metric::{metric_euclidean, metric_hyperbolic, MetricMatrix};
pub use orbit::{OrbitSpec, SIMPLEX_TOLERANCE};
pub use volume::{volume_euclidean, volume_from_metric, volume_hyperbolic};
