use thiserror::Error;

/// Errors raised by set construction, arithmetic and the decomposition engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {dim} unsupported (only 1 and 2 are)")]
    UnsupportedDimension { dim: usize },

    #[error("direction is not a unit vector (norm {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("empty point list")]
    EmptyPointList,

    #[error("invalid set: {reason}")]
    InvalidSet { reason: String },

    #[error("support grids disagree: {reason}")]
    GridMismatch { reason: String },

    #[error("sequence is not decreasing: term {index} does not contain term {} (violation {gap})", index + 1)]
    NotDecreasing { index: u32, gap: f64 },

    #[error("halving failed at depth {depth}: G(2x) exceeds 2G(x) at x = {witness:?} by {gap}")]
    HalvingViolation {
        depth: u32,
        witness: Vec<f64>,
        gap: f64,
    },

    #[error("point {point:?} lies outside the map's domain ({reason})")]
    OutsideDomain { point: Vec<f64>, reason: String },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
}

impl Error {
    pub(crate) fn invalid_set(reason: impl Into<String>) -> Self {
        Error::InvalidSet {
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid_parameter(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
