use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity error: {0}")]
    Arity(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("inadmissible element: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("reference outside the window: {0}")]
    OutOfWindow(String),
    #[error("calibration failed; best residual {0}")]
    Calibration(String),
    #[error("not associativizable: {0}")]
    NonAssociativizable(String),
    #[error("action is not of jet type: {0}")]
    NotJetType(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
