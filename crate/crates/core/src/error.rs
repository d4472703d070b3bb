use thiserror::Error;

/// Every failure the workbench can report.
///
/// The variants follow the error classes of the public operations so the
/// command line can map them onto distinct exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation error: factor {factor} vanishes at the specialization point")]
    Evaluation { factor: String },
    #[error("invalid specialization point: {0}")]
    Validation(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("degree bound exceeded: degree {degree} > completed bound {bound}; recomplete with a larger bound")]
    DegreeBound { degree: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural failure: {0}")]
    Structural(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
