use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants fall into two families: invalid input (shape, dimension, index,
/// domain, parse, and the density-operator validation failures) and
/// numerical failure (non-convergence, failed internal cross-checks).
/// [`QuditError::is_numerical`] separates the two.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuditError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("positivity error: {0}")]
    Positivity(String),
    #[error("hermiticity error: {0}")]
    Hermiticity(String),
    #[error("unitarity error: {0}")]
    Unitarity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl QuditError {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, QuditError::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, QuditError>;
