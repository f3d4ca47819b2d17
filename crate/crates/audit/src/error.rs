use thiserror::Error;

/// Failures of the auditor itself (as opposed to law violations, which are
/// reported as entries).
#[derive(Debug, Error)]
pub enum AuditError {
    #[error("config error{}: {message}", row.map(|r| format!(" in row {r}")).unwrap_or_default())]
    Config { row: Option<usize>, message: String },
    #[error(transparent)]
    Core(#[from] seqprod_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl AuditError {
    pub fn config(row: Option<usize>, message: impl Into<String>) -> Self {
        AuditError::Config {
            row,
            message: message.into(),
        }
    }
}
