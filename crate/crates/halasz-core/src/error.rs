use alloc::string::String;
use core::fmt;

/// Errors surfaced by the computational kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// A requested point lies beyond the materialized / sieved range.
    OutOfRange(String),
    /// Allocation failed while building a large table.
    Resource(String),
    /// A custom function spec does not assign a value to a needed prime.
    IncompleteSpec { prime: u64 },
    /// Construction parameters degenerate (e.g. empty small-prime range).
    DegenerateParameters(String),
    /// Exhaustive enumeration was requested beyond the supported size.
    TooLarge(String),
    /// The operation is defined for real-valued specs only.
    UnsupportedForComplex,
    /// Evaluation at a pole.
    Pole,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            Error::Resource(msg) => write!(f, "resource error: {msg}"),
            Error::IncompleteSpec { prime } => {
                write!(f, "incomplete spec: no value assigned to prime {prime}")
            }
            Error::DegenerateParameters(msg) => write!(f, "degenerate parameters: {msg}"),
            Error::TooLarge(msg) => write!(f, "too large: {msg}"),
            Error::UnsupportedForComplex => {
                write!(f, "unsupported for complex-valued specs")
            }
            Error::Pole => write!(f, "evaluation at a pole"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
