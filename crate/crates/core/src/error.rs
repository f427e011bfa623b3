use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the CLI exit-code classes: dimension, domain and
/// unsupported-parameter errors are invalid input, `Resource` is a cap being
/// hit, `Inconsistency` means a computed object contradicted an expectation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: String, cap: String },
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn resource(what: impl Into<String>, needed: impl ToString, cap: impl ToString) -> Self {
        Error::Resource { what: what.into(), needed: needed.to_string(), cap: cap.to_string() }
    }

    /// Errors caused by bad caller input rather than by computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Dimension(_) | Error::Domain(_) | Error::Unsupported(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
