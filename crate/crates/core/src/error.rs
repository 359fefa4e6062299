//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-side contract (precondition) was violated.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A matrix carried the wrong basis tag for the requested operation.
    #[error("basis mismatch: expected {expected} basis, got {found}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    /// A density matrix failed a physicality check.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A linear system was singular to working precision.
    #[error("singular system: {0}")]
    Singular(String),

    /// The adaptive integrator could not make progress.
    #[error("stiffness: step size underflow at t = {t:.6e} (h = {h:.3e})")]
    Stiffness { t: f64, h: f64 },

    /// A trajectory left the physical manifold by more than the allowed slack.
    #[error("integration failure: {0}")]
    IntegrationFailure(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
