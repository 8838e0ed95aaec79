use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    Validation(String),

    /// Two identical fermion states, or otherwise an input that collapses the
    /// requested construction.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("{what} = {value:e} exceeds tolerance {tol:e}")]
    Certification {
        what: &'static str,
        value: f64,
        tol: f64,
    },

    #[error("internal consistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input, as opposed to numerical
    /// failures inside a factorization.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_) | Error::Validation(_) | Error::DegenerateInput(_)
        )
    }
}
