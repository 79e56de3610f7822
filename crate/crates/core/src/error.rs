use std::fmt;
use std::io;

/// Errors shared by every module of the crate.
#[derive(Debug)]
pub enum Error {
    /// Matrix or vector dimensions do not conform.
    DimensionMismatch(String),
    /// A row/column/vertex index is out of range.
    IndexOutOfRange(String),
    /// A parameter is outside the documented domain (e.g. `n < 2`).
    InvalidArgument(String),
    /// Inputs required to be vertex-disjoint are not.
    NotDisjoint(String),
    /// A documented operation precondition failed (names the failed check).
    Precondition(String),
    /// A structural assumption on a block matrix does not hold.
    Structure(String),
    /// A geometric input is degenerate (singular system with non-unique solutions).
    Degenerate(String),
    /// A constraint system admits no solution.
    Infeasible(String),
    /// Search budget exhausted (or zero) before any result was produced.
    Budget(String),
    /// Malformed file contents.
    Format(String),
    /// Underlying I/O failure.
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::IndexOutOfRange(m) => write!(f, "index out of range: {m}"),
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::NotDisjoint(m) => write!(f, "inputs are not vertex-disjoint: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Structure(m) => write!(f, "structural precondition violated: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::Infeasible(m) => write!(f, "infeasible system: {m}"),
            Error::Budget(m) => write!(f, "no result within budget: {m}"),
            Error::Format(m) => write!(f, "format error: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}
