//! Crate-wide error type.

use std::fmt;
use std::io;

/// Errors produced by booklab operations.
///
/// `Inconclusive` is special: it marks a search that hit its resource cap
/// without reaching an answer. Callers must never treat it as a boolean
/// result; the CLI maps it to a distinct exit code.
#[derive(Debug)]
pub enum Error {
    /// A vertex index was not in `[0, n)`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge `(v, v)` was supplied.
    SelfLoop { vertex: usize },
    /// An operation required a nonempty vertex set.
    EmptySet { what: &'static str },
    /// A numeric argument was outside its domain.
    Domain(String),
    /// A precondition on an operation's inputs was violated.
    Precondition(String),
    /// The requested spine is not a monochromatic clique in the given color.
    NotMonochromatic,
    /// No monochromatic clique of the requested size exists.
    NoSpine { color: &'static str, k: usize },
    /// The instance exceeds the cap for exhaustive processing.
    TooLarge(String),
    /// A search hit its cap before reaching a definitive answer.
    Inconclusive(String),
    /// Persistence format violation.
    Format(String),
    /// Underlying I/O failure.
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range (n = {n})")
            }
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::EmptySet { what } => write!(f, "{what} must be nonempty"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::NotMonochromatic => write!(f, "spine is not a monochromatic clique"),
            Error::NoSpine { color, k } => {
                write!(f, "no monochromatic {color} clique of size {k} exists")
            }
            Error::TooLarge(msg) => write!(f, "instance too large: {msg}"),
            Error::Inconclusive(msg) => write!(f, "inconclusive: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(e) => write!(f, "I/O error: {e}"),
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

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
