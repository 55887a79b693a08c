use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument is outside its physical domain.
    #[error("invalid {name}: {value} ({reason})")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The parameter cannot be estimated from the supplied information.
    #[error("unidentifiable parameter: {0}")]
    Unidentifiable(&'static str),

    #[error("search precondition violated: expected exactly one shared photon, found {occupied} occupied bins")]
    SearchPrecondition { occupied: usize },

    #[error("integrator step failure: norm drift {drift:.3e} per unit time exceeds {limit:.1e}")]
    IntegratorDrift { drift: f64, limit: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
}

/// Rejects non-finite or non-positive values.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::param(name, value, "must be finite and > 0"))
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::param(name, value, "must be finite and >= 0"))
    }
}
