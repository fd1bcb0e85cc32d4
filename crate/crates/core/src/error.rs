use thiserror::Error;

/// Error type shared by every module in the toolkit.
///
/// The CLI maps these onto its exit-code scheme: configuration and input
/// problems exit 2, runtime failures (numeric aborts, IO) exit 3, malformed
/// dataset files exit 4.
#[derive(Debug, Error)]
pub enum FmError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    /// A kernel produced NaN/Inf, or training hit a non-finite loss.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// API misuse, e.g. running backward twice on the same graph.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("data format error at byte {offset}: {msg}")]
    DataFormat { offset: u64, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FmError>;

impl FmError {
    pub fn config(msg: impl Into<String>) -> Self {
        FmError::Config(msg.into())
    }
    pub fn input(msg: impl Into<String>) -> Self {
        FmError::Input(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        FmError::Numeric(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        FmError::Usage(msg.into())
    }
}
