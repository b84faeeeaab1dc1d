use thiserror::Error;

use crate::faces::FaceCode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two n-faces of one (n+1)-subcube derive different colors for a shared face.
    #[error("R violates the {arity}-simplex equation on subcube {subcube}: face {face} gets colors {first} and {second}")]
    SimplexViolation {
        arity: usize,
        subcube: FaceCode,
        face: FaceCode,
        first: u32,
        second: u32,
    },

    /// A computation would exceed the configured size cap.
    #[error("resource cap exceeded: {what} needs {requested} entries, cap is {cap}")]
    Resource {
        what: String,
        requested: u128,
        cap: u128,
    },

    /// The rational map hit a non-invertible denominator.
    #[error("singular point: {0}")]
    Singular(String),

    /// A precondition the caller is responsible for does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Something that is a theorem turned out false; always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
