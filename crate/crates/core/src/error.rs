use thiserror::Error;

/// Errors produced by model construction and analysis routines.
///
/// Validation messages name the offending parameter so callers can surface
/// them directly.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameter validation failed; the message names the offending field.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A trajectory was too short for the requested analysis.
    #[error("trajectory too short: need at least {needed} samples, got {got}")]
    TrajectoryTooShort { needed: usize, got: usize },

    /// A matrix expected to be Hermitian was not, within tolerance.
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {defect:.3e} exceeds {tol:.1e}")]
    NotHermitian { defect: f64, tol: f64 },

    /// Columns of an operator expected to be an isometry were not orthonormal.
    #[error("operator columns are not orthonormal: max Gram defect {defect:.3e} exceeds {tol:.1e}")]
    NotIsometric { defect: f64, tol: f64 },

    /// A matrix failed the density-matrix checks.
    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    /// An asymptotic analysis was requested on a state that has not settled
    /// into the locked subspace.
    #[error("state is not phase-locked at step {t}: locked-subspace weight {weight:.6}")]
    NotLocked { weight: f64, t: u64 },

    /// Dimension exceeds what the operation supports.
    #[error("dimension {d} exceeds the supported bound {cap} for this operation")]
    DimensionTooLarge { d: usize, cap: usize },

    /// Basis index outside [0, d).
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Tensor-factor metadata absent or inconsistent with the operation.
    #[error("tensor factor mismatch: {0}")]
    FactorMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
