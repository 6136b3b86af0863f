use thiserror::Error;

use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a documented precondition. `key` names the
    /// offending field so front-ends can report it verbatim.
    #[error("invalid `{key}`: {reason}")]
    InvalidParameter { key: String, reason: String },

    #[error("energy {energy} lies within {tolerance:e} of a pole at {pole}")]
    PoleProximity { energy: C64, pole: C64, tolerance: f64 },

    #[error("eigensolver failed for {descriptor}: {reason}")]
    NonConvergence { descriptor: String, reason: String },

    #[error("exponent {exponent} overflows (limit {limit})")]
    Overflow { exponent: f64, limit: f64 },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PoleProximity { .. } | Error::NonConvergence { .. } | Error::Overflow { .. }
        )
    }
}
