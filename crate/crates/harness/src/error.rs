use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Solver(#[from] fvweno::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("configuration: {0}")]
    Config(String),

    #[error("problem {0} has no exact solution")]
    NoExactSolution(String),

    #[error("Newton iteration for the Burgers solution did not converge at s = {s}, t = {t} (residual {residual:e})")]
    Newton { s: f64, t: f64, residual: f64 },

    #[error("EOC needs positive errors, got {coarse:e} and {fine:e}")]
    NonPositiveError { coarse: f64, fine: f64 },
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}
