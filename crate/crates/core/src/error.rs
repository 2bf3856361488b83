use thiserror::Error;

use crate::dense::Role;
use crate::parser::ParseError;

/// Errors raised by conversions, transforms and closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("representation mismatch: expected {expected}, found {found}")]
    Representation { expected: Role, found: Role },

    #[error("monomial uses position {position}, but only {nvars} variables are declared")]
    Domain { position: u32, nvars: u32 },

    #[error("{what}: {requested} exceeds the supported limit of {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("point has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for the error kinds the CLI maps to its capacity exit code.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
