use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown material preset `{name}` (available: {available})")]
    NotFound { name: String, available: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("nonlocal argument u = {u} lies on the branch cut of ln((1+u)/(1-u))")]
    BranchCut { u: Complex64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid integral specification: {0}")]
    InvalidSpec(String),

    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    #[error("quadrature did not converge: {context} (estimate {estimate:e}, error {error:e})")]
    Unconverged {
        context: String,
        estimate: f64,
        error: f64,
    },

    #[error("at Omega = {omega:e}, Q = {q:e}: {source}")]
    Cell {
        omega: f64,
        q: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True when the failure is a non-converged integral, possibly wrapped in
    /// a grid-cell context.
    pub fn is_unconverged(&self) -> bool {
        match self {
            Error::Unconverged { .. } => true,
            Error::Cell { source, .. } => source.is_unconverged(),
            _ => false,
        }
    }

    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_))
    }
}
