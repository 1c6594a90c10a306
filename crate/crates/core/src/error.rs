use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    /// Carries the name of the offending quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation produced a non-finite intermediate value.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Operator/vector dimensions do not match.
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    /// An iterative procedure exhausted its budget without converging.
    #[error("did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(what: impl Into<String>) -> Self {
        Error::Domain(what.into())
    }
}

/// Checks that a named scalar is strictly positive and finite.
pub(crate) fn ensure_positive_finite(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::Domain(format!("{name} must be finite, got {value}")));
    }
    if value <= 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be strictly positive, got {value}"
        )));
    }
    Ok(())
}
