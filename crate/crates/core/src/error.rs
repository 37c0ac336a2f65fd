use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
