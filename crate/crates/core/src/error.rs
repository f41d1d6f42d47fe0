use std::fmt;

/// Errors produced by model construction and the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the admissible domain (bad angle, non-positive height, ...).
    Domain(String),
    /// A numerical procedure failed: no convergence, singular system, left the
    /// validity domain mid-computation.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
