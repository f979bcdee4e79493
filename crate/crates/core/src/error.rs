use alloc::string::String;

/// Errors raised by every fallible operation in the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A connected component exceeds the oracle's exhaustive-search budget.
    #[error("component containing vertex {vertex} has {size} vertices, limit is {limit}")]
    Capacity {
        vertex: usize,
        size: usize,
        limit: usize,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidArgument(alloc::format!($($arg)*))
    };
}
pub(crate) use invalid;
