use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("root finder did not converge after {iterations} iterations")]
    RootsNotConverged { iterations: usize },

    /// A rational map hit a denominator with modulus below the degeneracy cutoff.
    #[error("degenerate denominator at stage {stage} (|d| = {modulus:e})")]
    DegenerateDenominator { stage: usize, modulus: f64 },

    #[error("polynomial is not quasi-homogeneous (no weight)")]
    WeightUnset,

    #[error("point not in the open unit disc: |z| = {0}")]
    OutsideDisc(f64),

    #[error("grid has {0:e} points, more than 2^53")]
    GridTooLarge(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing or invalid certificate: {0}")]
    MissingCertificate(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}
