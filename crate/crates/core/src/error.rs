use std::path::PathBuf;

/// Errors produced by the analysis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("average retweet density undefined for category {0}: no celebrity-authored tweets")]
    UndefinedDensity(String),
    #[error("linguistic profile undefined: {0}")]
    UndefinedProfile(String),
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),
    #[error("model fit failed: {0}")]
    Fit(String),
    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(what: &'static str, message: impl ToString) -> Self {
        Error::Format {
            what,
            message: message.to_string(),
        }
    }

    /// True for errors caused by bad user input rather than I/O or internal failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
