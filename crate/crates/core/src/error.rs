use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(&'static str),
    /// An index exceeds a configured bound.
    Capacity { what: &'static str, requested: u64, limit: u64 },
    /// Two operands have incompatible sizes.
    SizeMismatch { left: usize, right: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity { what, requested, limit } => {
                write!(f, "capacity error: {what} {requested} exceeds limit {limit}")
            }
            Error::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for Error {}
