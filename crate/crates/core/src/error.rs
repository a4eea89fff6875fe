use thiserror::Error;

use crate::field::FieldSpec;
use crate::group::GroupError;

/// Errors produced anywhere in the library.
///
/// The CLI maps [`Error::CertificateViolation`] and [`Error::MethodDisagreement`]
/// to exit code 2 (an internal bug); everything else is a user-facing
/// validation error (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {what} from `{token}`: {reason}")]
    Parse {
        what: &'static str,
        token: String,
        reason: String,
    },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("invalid group: {0}")]
    InvalidGroup(#[from] GroupError),

    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Entry `(i, j)` differs from entry `(k, l)` although `g_i^-1 g_j = g_k^-1 g_l`.
    /// Indices are 0-based; the message prints them 1-based.
    #[error(
        "matrix is not G-circulant: A[{}][{}] != A[{}][{}] although g{}^-1 g{} = g{}^-1 g{}",
        .i + 1, .j + 1, .k + 1, .l + 1, .i + 1, .j + 1, .k + 1, .l + 1
    )]
    NotCirculant {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the zero polynomial has no trailing-power split")]
    ZeroPolynomial,

    #[error("certificate violation: {0}")]
    CertificateViolation(String),

    #[error("radical methods disagree: {0}")]
    MethodDisagreement(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(what: &'static str, token: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            token: token.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CertificateViolation(_) | Error::MethodDisagreement(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
