use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("column {0:?} not found in header")]
    MissingColumn(String),
    #[error("no usable rows ({skipped} skipped)")]
    NoUsableRows { skipped: usize },
    #[error("all {n} points have the same color")]
    SingleColor { n: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("report invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Core(#[from] faircluster_core::Error),
}

impl CliError {
    /// Process exit code: 2 when the data cannot meet the balance target, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(faircluster_core::Error::InfeasibleBalance { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
