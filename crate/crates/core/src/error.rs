use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("radius r_{index} = {value} is not positive")]
    NonPositiveRadius { index: usize, value: String },

    #[error("simplex coordinate s_{index} = {value} is not positive")]
    NonPositiveEntry { index: usize, value: String },

    #[error("simplex coordinates sum to {sum}, not 1")]
    SimplexNotNormalized { sum: String },

    #[error("geodesic radius must be positive")]
    NonPositiveGeodesicRadius,

    #[error("tanh^2 r = {value} must lie strictly between 0 and 1")]
    TanhSquaredOutOfRange { value: String },

    #[error("point with |z| = {norm} lies outside the open unit ball")]
    PointOutsideBall { norm: f64 },

    #[error("the zero vector is not a mode")]
    ZeroMode,

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be pairwise distinct")]
    IndicesNotDistinct,

    #[error("a triple of indices needs dimension at least 3, got {n}")]
    RequiresDimensionAtLeast3 { n: usize },

    #[error("derivative order must be 1 or 2, got {0}")]
    InvalidOrder(u8),

    #[error("grid of {grid} points per angle is below the required {required}")]
    GridTooCoarse { grid: usize, required: usize },

    #[error("enumeration bound {requested} is below the certified bound {required}")]
    BoundTooSmall { requested: String, required: String },

    #[error("bound must be positive")]
    NonPositiveBound,

    #[error("mode {mode}: fast-path sign claim disagrees with the evaluated form")]
    FastPathDisagreement { mode: String },

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
}
