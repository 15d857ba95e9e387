use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no closed form in catalog for prefix {0}")]
    NotInCatalog(String),

    #[error("{what} is only established for n >= {threshold} (got n = {n})")]
    BelowThreshold {
        what: String,
        n: usize,
        threshold: usize,
    },

    #[error("{what} is limited to n <= {limit} (requested n = {n}; {estimate})")]
    ResourceGuard {
        what: String,
        n: usize,
        limit: usize,
        estimate: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("underdetermined system: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("incomplete table: {0}")]
    IncompleteTable(String),

    #[error("ambiguous row assignment: {0}")]
    AmbiguousRows(String),

    #[error("no simple-spectrum combination found after {0} attempts")]
    Degenerate(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
