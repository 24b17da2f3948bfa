use thiserror::Error;

/// Failure of a CLI invocation, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("oracle budget exceeded: {0}")]
    Budget(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Io(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<dimredkc::Error> for CliError {
    fn from(e: dimredkc::Error) -> Self {
        use dimredkc::Error as E;
        match e {
            E::InvalidParameter(_) | E::MetricMismatch(_) => CliError::Config(e.to_string()),
            E::DimensionMismatch { .. }
            | E::NonBinary { .. }
            | E::NonFinite { .. }
            | E::EmptyPointSet => CliError::Data(e.to_string()),
            E::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Other(e.into()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
