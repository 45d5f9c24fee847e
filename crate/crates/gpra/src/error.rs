//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone)]
pub enum Error {
    /// Pipe geometry violates `D > 2t > 0` or related bounds.
    InvalidGeometry(String),
    /// Hoop stress outside the band where the yield surface has real roots.
    NoRealRoot { sigma_y: f64, sigma_h: f64 },
    /// A parameter outside its documented range (e.g. `Ep >= E`).
    InvalidParameter(String),
    /// Non-finite integrand encountered while integrating a plastic branch.
    QuadratureFailure(String),
    /// Input outside the problem domain or parameter box.
    OutOfDomain(String),
    /// Layer sizes and parameter vector disagree.
    ShapeMismatch { expected: usize, got: usize },
    /// A residual or loss evaluated to NaN/inf; carries the offending point.
    NonFinite(String),
    /// Newton iteration failed to converge; carries diagnostics.
    NoConvergence {
        load_step: usize,
        residual_history: Vec<f64>,
    },
    /// Loss non-finite at the initial parameters.
    Diverged(String),
    /// Configuration parse or validation failure.
    Config(String),
    /// Model file incompatible with the configured problem.
    DigestMismatch,
    /// Malformed or unreadable weight file.
    BadModelFile(String),
    /// Too many evaluator failures during a Monte-Carlo run.
    EvaluatorFailures { failed: usize, total: usize },
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGeometry(m) => write!(f, "invalid geometry: {m}"),
            Error::NoRealRoot { sigma_y, sigma_h } => write!(
                f,
                "no real yield roots: |sigma_h| = {:.4e} exceeds 2*sigma_y/sqrt(3) = {:.4e}",
                sigma_h.abs(),
                2.0 * sigma_y / 3f64.sqrt()
            ),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::QuadratureFailure(m) => write!(f, "quadrature failure: {m}"),
            Error::OutOfDomain(m) => write!(f, "out of domain: {m}"),
            Error::ShapeMismatch { expected, got } => {
                write!(f, "shape mismatch: expected {expected} parameters, got {got}")
            }
            Error::NonFinite(m) => write!(f, "non-finite value: {m}"),
            Error::NoConvergence {
                load_step,
                residual_history,
            } => write!(
                f,
                "no convergence at load step {load_step}; last residuals {:?}",
                &residual_history[residual_history.len().saturating_sub(5)..]
            ),
            Error::Diverged(m) => write!(f, "diverged: {m}"),
            Error::Config(m) => write!(f, "config error: {m}"),
            Error::DigestMismatch => {
                write!(f, "model trained for a different problem (digest mismatch)")
            }
            Error::BadModelFile(m) => write!(f, "bad model file: {m}"),
            Error::EvaluatorFailures { failed, total } => write!(
                f,
                "evaluator failed on {failed} of {total} samples (limit 0.1%)"
            ),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
