use std::fmt;

/// Errors produced by construction, parsing, and checked operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix/vector/tensor dimensions do not agree.
    Shape { expected: String, found: String },
    /// Elements belong to different algebras.
    AlgebraMismatch,
    /// Two algebras that must share the deformation parameter do not.
    QMismatch,
    /// Zero denominator in a rational literal.
    ZeroDenominator,
    /// A constructor precondition failed (for example an unverified
    /// bimodule fed to a semidirect product).
    Unverified(String),
    /// Malformed input file; `at` is a JSON path locating the problem.
    Parse { at: String, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
            Error::AlgebraMismatch => write!(f, "elements belong to different algebras"),
            Error::QMismatch => write!(f, "algebras have different q parameters"),
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::Unverified(what) => write!(f, "precondition failed: {what}"),
            Error::Parse { at, msg } => write!(f, "parse error at {at}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub fn shape(expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::Shape {
            expected: expected.into(),
            found: found.into(),
        }
    }

    pub fn parse(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
