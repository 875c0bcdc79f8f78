use alloc::string::String;
use core::fmt;

/// Errors produced by model construction, policy evaluation and the
/// experiment harness.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// More clusters than storage tiers; the caller must lower k.
    Capacity { clusters: usize, tiers: usize },
    /// Savings relative to a zero-cost baseline are undefined.
    UndefinedSavings,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Capacity { clusters, tiers } => write!(
                f,
                "capacity error: {clusters} clusters but only {tiers} storage tiers; lower k"
            ),
            Error::UndefinedSavings => write!(f, "savings undefined for a zero-cost baseline"),
        }
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
