use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: unknown vertex ids, disconnected graphs where a
    /// connected one is required, non-cubic gadget sources and so on.
    #[error("invalid input: {0}")]
    Input(String),

    /// An exponential routine was asked to run past its vertex cap.
    #[error("{what}: size {size} exceeds the cap of {cap}")]
    Size {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A block that the strict block solver has no polynomial routine for.
    #[error("unsupported block: {0}")]
    Classification(String),

    /// An algorithm was dispatched on an instance outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
