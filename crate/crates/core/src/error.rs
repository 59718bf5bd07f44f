use std::path::PathBuf;

/// Errors raised by the numerical and physical layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("integral diverges at {endpoint}: {detail}")]
    Divergence {
        endpoint: &'static str,
        detail: String,
    },

    #[error("{op} did not converge: {detail}")]
    NonConvergence { op: &'static str, detail: String },

    #[error("root finding failed ({reason}); iterates: {trace:?}")]
    RootFind { reason: String, trace: Vec<f64> },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("no bound state for coupling v = {v}; an attractive coupling v < 0 is required")]
    NoBoundState { v: f64 },

    #[error("epsilon = {epsilon} lies within {guard:e} of the pole at {pole}")]
    NearPole { epsilon: f64, pole: f64, guard: f64 },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialize(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn no_convergence(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NonConvergence {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Divergence { .. } | Error::NonConvergence { .. } | Error::RootFind { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
