use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition of the called operation does not hold.
    Usage(String),
    /// A sum-model aggregate left the supported integer range.
    Arithmetic(String),
    /// A configured search budget or size cap would be exceeded.
    /// The message names the budget, its limit and what was required.
    Resource(String),
    /// A generator refused to build an instance that is infeasible by
    /// construction (callers may force it).
    Refused(String),
    /// An extracted solution failed its independent checker.
    Consistency { check: String, witness: Vec<usize> },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn budget(name: &str, limit: impl fmt::Display, required: impl fmt::Display) -> Self {
        Error::Resource(alloc::format!(
            "{name} exceeded (limit {limit}, required {required})"
        ))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Arithmetic(msg) => write!(f, "arithmetic error: {msg}"),
            Error::Resource(msg) => write!(f, "resource error: {msg}"),
            Error::Refused(msg) => write!(f, "refused: {msg}"),
            Error::Consistency { check, witness } => {
                write!(f, "internal consistency error: {check} (witness {witness:?})")
            }
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}
