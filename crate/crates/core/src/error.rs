use thiserror::Error;

pub type Result<T> = std::result::Result<T, QesError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    /// A function produced a non-finite value where a finite one was required.
    #[error("domain error: {what} is not finite at x = {x}")]
    Domain { what: String, x: f64 },

    /// Evaluation landed on (or within the safety margin of) a declared singularity.
    #[error("singularity: {what} at x = {x}; shift the reference point or shrink the window")]
    Singularity { what: String, x: f64 },

    /// Caller supplied arguments outside the documented contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// Quadrature or mapping left the sign-definite branch of the generating superpotential.
    #[error("branch violation: {0}")]
    Branch(String),

    /// A value was requested outside the tabulated range of a map.
    #[error("range error: {value} outside [{lo}, {hi}]")]
    Range { value: f64, lo: f64, hi: f64 },

    /// Input was degenerate (vanishing function, coincident parameters, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The operator could not be written in the requested generator basis.
    #[error("decomposition failed: {reason}; offending coefficients: {offending:?}")]
    Decomposition {
        reason: String,
        offending: Vec<(String, f64)>,
    },

    /// An iterative kernel did not reach its target.
    #[error("no convergence: {0}")]
    Convergence(String),
}

impl QesError {
    pub fn usage(msg: impl Into<String>) -> Self {
        QesError::Usage(msg.into())
    }

    pub fn domain(what: impl Into<String>, x: f64) -> Self {
        QesError::Domain {
            what: what.into(),
            x,
        }
    }

    pub fn singularity(what: impl Into<String>, x: f64) -> Self {
        QesError::Singularity {
            what: what.into(),
            x,
        }
    }
}
