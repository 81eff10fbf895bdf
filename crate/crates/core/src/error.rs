use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: bad input / configuration, and
/// numerical contract violations (a result that fails its own invariant).
/// [`Error::is_numerical`] tells them apart so the CLI can map them to
/// distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (relative residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("state is not pure (purity {purity:.12})")]
    NotPure { purity: f64 },

    #[error("non-finite entry encountered in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("parameter outside the supported regime: {0}")]
    Regime(String),

    #[error("numerical contract violated: {0}")]
    Contract(String),

    #[error("eigensolver failed to converge after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical invariant rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Contract(_) | Error::NoConvergence(_) | Error::NonFinite(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
