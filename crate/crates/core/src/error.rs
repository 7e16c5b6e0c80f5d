//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter was non-finite or outside its admissible range.
    #[error("invalid {name}: {value} ({reason})")]
    InvalidInput {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The interference denominator of the transmission formula is below the
    /// degeneracy threshold; the point sits on a resonance pole and no finite
    /// transmission matrix is reported.
    #[error("degenerate transmission denominator |D| = {magnitude:.3e} at ka={ka}, x={x}, gamma={gamma}")]
    DegenerateDenominator {
        magnitude: f64,
        ka: f64,
        x: f64,
        gamma: f64,
    },

    /// The junction-matching linear system is numerically singular.
    #[error("singular scattering system (condition estimate {cond_estimate:.3e}) at ka={ka}, x={x}, gamma={gamma}")]
    SingularSystem {
        cond_estimate: f64,
        ka: f64,
        x: f64,
        gamma: f64,
    },

    /// Probability conservation failed beyond the hard limit; this signals a
    /// defect in the junction conditions rather than ordinary roundoff.
    #[error("probability conservation violated: defect {defect:.3e} exceeds {limit:.1e}")]
    ConservationFailure { defect: f64, limit: f64 },

    /// A gate comparison was requested against (or with) an all-zero matrix.
    #[error("zero matrix has no direction; fidelity is undefined")]
    ZeroMatrix,

    /// An unknown gate name was requested from the target library.
    #[error("unknown gate target: {0}")]
    UnknownGate(String),

    /// A sequence description was structurally inconsistent.
    #[error("invalid gate sequence: {0}")]
    InvalidSequence(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that mark a resonant / numerically degenerate
    /// parameter point rather than a caller mistake.
    pub fn is_degenerate_point(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDenominator { .. } | Error::SingularSystem { .. }
        )
    }
}
