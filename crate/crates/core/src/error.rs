use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller passed a value outside an operation's domain: an element
    /// index past the group order, a vertex past `n`, a malformed edge.
    #[error("invalid argument: {0}")]
    Usage(String),

    /// A construction precondition does not hold (odd `n`, `r <= 4`, ...).
    #[error("{0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An exhaustive routine refused to run because the instance is larger
    /// than its budget.
    #[error("{what}: {needed} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: msg.into(),
        }
    }
}
