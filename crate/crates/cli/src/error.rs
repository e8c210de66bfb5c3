use hesse_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("term '{term}' has degree {degree}, expected 3")]
    Inhomogeneous { term: String, degree: u32 },
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        CliError::Syntax { pos, msg: msg.into() }
    }

    /// 1 usage, 2 parse, 3 numeric failure, 4 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Json(_) => 1,
            CliError::Syntax { .. } | CliError::Inhomogeneous { .. } => 2,
            CliError::Verification(_) => 4,
            CliError::Core(e) => match e {
                Error::Parse { .. } | Error::ZeroForm => 2,
                Error::Numeric(_)
                | Error::ResidualTooLarge { .. }
                | Error::LabelingNotFound
                | Error::UnsupportedExtension { .. }
                | Error::DegenerateFrame(_) => 3,
                Error::Consistency(_) | Error::NotAGroup | Error::ClosureOverflow(_) => 4,
                _ => 1,
            },
        }
    }
}
