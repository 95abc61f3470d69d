use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {message}")]
    Validation { field: &'static str, message: String },

    #[error("{0}")]
    Core(#[from] dirac_soliton::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    PotentialFile { path: PathBuf, message: String },

    #[error("output: {0}")]
    Output(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn validation(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Validation {
            field,
            message: message.into(),
        }
    }

    /// 1 bad input, 2 computation failure, 3 failed verification.
    pub fn exit_code(&self) -> i32 {
        use dirac_soliton::Error as E;
        match self {
            CliError::Validation { .. } | CliError::PotentialFile { .. } => 1,
            CliError::Core(E::InvalidParams(_) | E::Tabulation(_)) => 1,
            CliError::Core(_) | CliError::Io { .. } | CliError::Output(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    /// Extra advice printed after the message, if any.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(dirac_soliton::Error::GridTooCoarse { .. }) => {
                Some("two edges are closer than --tol; rerun with a smaller --tol")
            }
            CliError::Core(dirac_soliton::Error::StepCountTooSmall { .. }) => {
                Some("the tabulated potential varies too fast for the integrator; smooth or resample it")
            }
            _ => None,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
