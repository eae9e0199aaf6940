use thiserror::Error;

/// Errors shared across the crate. Search-style operations never return a
/// wrong boolean: running out of budget or of certificate bounds is a
/// distinct outcome.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("search budget exhausted after {0} nodes")]
    BudgetExceeded(u64),
    #[error("instance with {n} vertices exceeds the supported bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("embedding undecided within certificate and refutation bounds")]
    Undecided,
    #[error("not a cograph: induced path on vertices {0} {1} {2} {3}")]
    NotCograph(usize, usize, usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
