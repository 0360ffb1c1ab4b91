use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("input error: {0}")]
    Input(String),

    /// The input is well formed but outside what a construction supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A closed-form bound was requested outside the hypotheses it is stated under.
    #[error("bound not asserted: {0}")]
    BoundNotAsserted(String),

    /// A size, node or time cap was hit.
    #[error("budget exceeded: {what}")]
    Budget {
        what: String,
        /// Best proven lower bound on the quantity being computed, if any.
        lower: Option<usize>,
        /// Best known upper bound, if any.
        upper: Option<usize>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>) -> Self {
        Error::Budget {
            what: what.into(),
            lower: None,
            upper: None,
        }
    }
}
