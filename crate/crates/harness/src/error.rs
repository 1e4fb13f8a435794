use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] orbgrand_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("config key {key:?}: {message}")]
    Config { key: String, message: String },
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

pub(crate) fn config_err(key: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::Config {
        key: key.to_string(),
        message: message.into(),
    }
}
