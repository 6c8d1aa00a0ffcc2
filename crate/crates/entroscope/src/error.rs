//! Error taxonomy shared by every module of the crate.
//!
//! The variants partition failures by *who is at fault*:
//!
//! * [`Error::Domain`] — the request is outside an operation's mathematical
//!   domain (dividing by the zero polynomial, taking the entropy of a flow
//!   kind the backend does not define, an infinite subgroup where a finite
//!   one is required).
//! * [`Error::Parse`] — a document or inline value failed validation; the
//!   message carries a location path such as `parts[2].matrix`.
//! * [`Error::UnsupportedBase`] — a cyclic base that the exact radical
//!   calculus does not cover (non-squarefree c > 0).
//! * [`Error::Numerical`] — a certified numeric routine could not reach the
//!   requested error bound within its precision cap.
//! * [`Error::Resource`] — an enumeration exceeded a hard cap (subset-mode
//!   sumsets, orbit walks).
//! * [`Error::Verification`] — an internal cross-check failed; this signals
//!   an engine bug, never bad user input.
//! * [`Error::Internal`] — a monitored invariant was violated (for example a
//!   subgroup-trajectory ratio sequence increasing).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A document or inline value failed validation. The string includes a
    /// location path into the offending document.
    #[error("parse error: {0}")]
    Parse(String),

    /// Cyclic base not supported by the exact calculus (non-squarefree c > 0).
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    /// A certified numeric computation could not reach the requested bound.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An enumeration blew past a configured hard cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// An internal verification pass failed. Indicates an engine bug.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A monitored structural invariant was violated. Indicates an engine bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// Domain/parse/resource/numerical problems are user-facing (exit 1);
    /// verification and internal failures exit 2 so scripted harness runs can
    /// distinguish "bad input" from "property violated".
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::Internal(_) => 2,
            _ => 1,
        }
    }
}
