use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    Index { index: i64, limit: i64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("state error: {0}")]
    State(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported wav format in `{chunk}` chunk: {reason}")]
    Format { chunk: String, reason: String },

    #[error("signal of {samples} samples does not fit in {capacity} amplitudes")]
    Capacity { samples: usize, capacity: usize },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("unknown readout `{0}`")]
    UnknownReadout(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
