use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("relation contains a cycle through element {0}")]
    Cyclic(usize),

    #[error("relation is not {0}")]
    NotAnOrder(&'static str),

    #[error("poset is not bounded")]
    Unbounded,

    #[error("poset is not a lattice")]
    NotALattice,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search budget of {0} steps exhausted before a decision")]
    BudgetExceeded(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidPath(_) => 2,
            Error::BudgetExceeded(_) => 5,
            _ => 3,
        }
    }
}
