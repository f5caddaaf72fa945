use std::path::PathBuf;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("{descriptor}: image {width}x{height} is too small (needs at least {min_width}x{min_height})")]
    ImageTooSmall {
        descriptor: &'static str,
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },

    #[error("{0}")]
    Dataset(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Classifier(String),

    #[error("selftest: {0} check(s) failed")]
    SelftestFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
