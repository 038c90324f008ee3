//! Error to exit-code mapping.

use qsonus_core::Error;

pub const GENERAL: u8 = 1;
pub const BAD_INPUT: u8 = 2;
pub const BAD_SIZE: u8 = 3;
pub const EMPTY_LIST: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Self::new(BAD_INPUT, anyhow::anyhow!(msg.into()))
    }

    pub fn size(msg: impl Into<String>) -> Self {
        Self::new(BAD_SIZE, anyhow::anyhow!(msg.into()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Format { .. } => BAD_INPUT,
            Error::Capacity { .. } | Error::Index { .. } => BAD_SIZE,
            _ => GENERAL,
        };
        Self::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(GENERAL, e)
    }
}

pub type Outcome = Result<(), Failure>;
