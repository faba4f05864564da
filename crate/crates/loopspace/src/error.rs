use loopspace_core::AlgebraError;
use serde_json::json;

/// Everything a command can fail with, mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Schema(_) => "SchemaError",
            CliError::Io(_) => "IoError",
            CliError::Algebra(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::RelationViolated { .. } | AlgebraError::InfiniteDimensional) => 3,
            CliError::Algebra(AlgebraError::SizeLimit(_)) => 4,
            _ => 2,
        }
    }

    /// `{"kind": ..., "message": ...}` on one line.
    pub fn to_json(&self) -> String {
        json!({ "kind": self.kind(), "message": self.to_string() }).to_string()
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}

pub fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}
