use thiserror::Error;

/// Everything a command can fail with, each mapped to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] stable_index_core::Error),
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use stable_index_core::Error as E;
        match self {
            CliError::Core(E::Inconclusive { .. }) => EXIT_INCONCLUSIVE,
            CliError::Core(E::CensusMismatch(_) | E::InconsistentReports(_)) => EXIT_FAILED,
            CliError::Core(E::Io(_)) | CliError::Io { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}
