use thiserror::Error;

/// Failures raised by the counting pipeline.
///
/// The three classes are kept distinct because callers react differently:
/// a domain error is a caller mistake, a refusal means an enumeration guard
/// tripped (the input is valid, just too large), and an inconsistency means
/// an exactness check failed and some result cannot be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("refused: {what} needs about {estimate} steps, cap is {cap}")]
    Refusal {
        what: String,
        estimate: String,
        cap: String,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub fn refusal(what: impl Into<String>, estimate: impl ToString, cap: impl ToString) -> Self {
        Error::Refusal {
            what: what.into(),
            estimate: estimate.to_string(),
            cap: cap.to_string(),
        }
    }

    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refusal { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration guards shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of acting-group elements (or matrices) an exhaustive
    /// loop may visit.
    pub group_size: u64,
    /// Maximum number of module elements an exhaustive submodule or table
    /// enumeration may touch.
    pub module_size: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_size: 100_000_000,
            module_size: 2_000_000,
        }
    }
}
