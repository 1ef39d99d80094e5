use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a function (e.g. a logarithmic singularity).
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a branch point or pole of the symbol.
    #[error("branch point: {0}")]
    BranchPoint(String),
    /// Physical configuration where the requested object does not exist.
    #[error("regime error: {0}")]
    Regime(String),
    /// Invalid user input.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} > tolerance {tolerance:.3e} after {intervals} intervals")]
    NonConvergence {
        estimate: f64,
        tolerance: f64,
        intervals: usize,
    },
    /// Linear system too ill-conditioned to trust.
    #[error("ill-conditioned system: condition estimate {0:.3e}")]
    IllConditioned(f64),
    /// Discretization too coarse for the wavelengths present.
    #[error("sampling criterion violated: {0}")]
    Sampling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
