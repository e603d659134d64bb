use thiserror::Error;

/// Failures raised by the library.
///
/// Validation failures (bad shapes, out-of-range arguments, singular
/// matrices) are kept apart from [`Error::CapExceeded`], which signals that
/// an exhaustive enumeration would exceed its configured size limit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is singular")]
    Singular,

    #[error("{what} needs {required} items, over the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: u64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn cap(what: &'static str, required: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            required: required.to_string(),
            cap,
        }
    }

    /// True for enumeration-size failures, false for validation failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default enumeration cap (number of enumerated objects).
pub const DEFAULT_CAP: u64 = 1_000_000;
