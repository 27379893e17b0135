use thiserror::Error;

/// Everything that can stop a command before a report is produced.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] braidalg::Error),

    #[error("cache: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit status: 2 for bad input, 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use braidalg::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::ResourceLimit { .. }) => 3,
            CliError::Core(
                E::InvalidArgument(_) | E::UnsupportedRank(_) | E::IndexOrder { .. } | E::IndexRange { .. },
            ) => 2,
            _ => 1,
        }
    }
}
