use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates an operation's precondition.
    #[error("rejected input: {0}")]
    Rejected(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A bounded search could neither confirm nor refute the answer.
    #[error("indeterminate within bound {bound}: {msg}")]
    Indeterminate { bound: u32, msg: String },
    #[error("not found: {0}")]
    NotFound(String),
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
