use thiserror::Error;

/// Errors raised by the engine.
///
/// Failed *claims* (a theorem inequality that does not hold, a design that is
/// not balanced) are reported as verdict values, not as errors. `Error` is for
/// bad input, exhausted budgets and broken internal invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("budget `{budget}` exceeded: need {required}, limit is {limit}")]
    Budget {
        budget: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
