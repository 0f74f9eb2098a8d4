//! Crate-wide error type.

use core::fmt;

/// Errors reported by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of the operation.
    Domain {
        /// Which argument or constraint was violated.
        what: &'static str,
        /// The offending value.
        value: f64,
    },
    /// A structural parameter (sizes, orderings, emptiness) was invalid.
    Parameter(&'static str),
    /// The requested evaluation path does not cover this case.
    Unsupported(&'static str),
    /// A quadrature or iteration failed to reach the requested accuracy.
    NonConvergence {
        /// Error estimate actually achieved.
        achieved: f64,
        /// Accuracy that was requested.
        requested: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Parameter(what) => write!(f, "parameter error: {what}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::NonConvergence {
                achieved,
                requested,
            } => write!(
                f,
                "failed to converge: achieved error estimate {achieved:e}, requested {requested:e}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
