use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input is outside the family an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A defining integral or series does not converge for this input.
    #[error("divergence: {0}")]
    Divergence(String),
    /// A truncation or tail bound exceeds the requested tolerance.
    #[error("accuracy error: {message}")]
    Accuracy {
        message: String,
        /// Smallest truncation that would satisfy the bound, when known.
        required_n: Option<usize>,
    },
    #[error("non-finite result: {0}")]
    NonFinite(String),
    #[error("eigen-solver did not converge: {0}")]
    EigenSolver(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }

    /// True for errors that signal insufficient numerical accuracy rather than bad input.
    pub fn is_accuracy(&self) -> bool {
        matches!(
            self,
            Error::Accuracy { .. } | Error::NonFinite(_) | Error::EigenSolver(_)
        )
    }
}
