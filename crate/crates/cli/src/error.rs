use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("check failed: {0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) | CliError::Failure(_) => 1,
        }
    }
}

impl From<moriwaki_core::Error> for CliError {
    fn from(e: moriwaki_core::Error) -> Self {
        match e {
            moriwaki_core::Error::InternalInconsistency(_) => CliError::Failure(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
