use thiserror::Error;

/// Failure modes shared by every numeric operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested level, exponent or range value cannot be reached on the branch.
    #[error("range error: {0}")]
    Range(String),

    /// A limit process or root solve exhausted its iteration budget.
    #[error("no convergence in {what} after {iterations} iterations")]
    NonConvergence { what: String, iterations: u32 },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("cannot parse number: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn stalled(what: impl Into<String>, iterations: u32) -> Self {
        Error::NonConvergence {
            what: what.into(),
            iterations,
        }
    }

    /// Prefixes the message with the name of the quantity being computed.
    pub fn labelled(self, label: &str) -> Self {
        match self {
            Error::Domain(m) => Error::Domain(format!("{label}: {m}")),
            Error::Range(m) => Error::Range(format!("{label}: {m}")),
            Error::NonConvergence { what, iterations } => Error::NonConvergence {
                what: format!("{label}: {what}"),
                iterations,
            },
            Error::UnknownName(m) => Error::UnknownName(format!("{label}: {m}")),
            Error::Parameter(m) => Error::Parameter(format!("{label}: {m}")),
            Error::Parse(m) => Error::Parse(format!("{label}: {m}")),
        }
    }

    /// Process exit code under the CLI contract: 3 for non-convergence, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
