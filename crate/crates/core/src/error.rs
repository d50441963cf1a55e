use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("element {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not an abelian group: {0}")]
    NotAGroup(String),

    #[error("not a truss: {} axiom violation(s)", .0.violations.len())]
    InvalidTruss(ValidationReport),

    #[error("not a ring: {} axiom violation(s)", .0.violations.len())]
    InvalidRing(ValidationReport),

    #[error("invalid split structure: {} axiom violation(s)", .0.violations.len())]
    InvalidStructure(ValidationReport),

    #[error("element {0} is not a two-sided absorber")]
    NotAnAbsorber(usize),

    #[error("element {0} is not central")]
    NotCentral(usize),

    #[error("matrix is not idempotent")]
    NotIdempotent,

    #[error("map is not an additive group homomorphism")]
    NotGroupHomomorphism,

    #[error("map is not a Rota-Baxter operator on the ring")]
    NotRbRing,

    #[error("operator check failed: {0}")]
    OperatorCheckFailed(String),

    #[error("operation not supported for {0}")]
    Unsupported(String),

    #[error("size {size} exceeds the configured cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
