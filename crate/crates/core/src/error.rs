use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: {reason} (got {value})")]
    Domain {
        op: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The hypergeometric series hit its term budget before reaching tolerance.
    #[error("series did not converge after {terms} terms (last partial sum {partial_sum})")]
    NotConverged { terms: usize, partial_sum: f64 },

    /// The input is valid mathematically but outside the range a method supports.
    #[error("{op}: x = {x} is outside the supported window [{lo}, {hi}]")]
    Unsupported {
        op: &'static str,
        x: f64,
        lo: f64,
        hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { op, value, reason }
    }
}

/// Rejects NaN and infinities.
pub(crate) fn finite(op: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(op, value, "argument must be finite"))
    }
}
