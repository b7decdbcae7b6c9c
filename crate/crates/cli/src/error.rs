use std::path::PathBuf;

use disruptplan::error::{CompileError, CostError, PddlError, TaskError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Pddl(#[from] PddlError),
    #[error(transparent)]
    Task(#[from] TaskError),
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error("{0}")]
    Usage(String),
    #[error("search stopped at its resource limit after {expanded} expansions")]
    ResourceLimit { expanded: u64 },
    #[error("task is unsolvable")]
    Unsolvable,
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for bad input, 3 for a search limit, 4 for an unsolvable task,
    /// 5 for a plan that does not solve its task, 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Pddl(PddlError::UnknownAction { .. }) => 5,
            CliError::Pddl(_) | CliError::Task(_) | CliError::Json(_) | CliError::Cost(_) | CliError::Usage(_) => 2,
            CliError::ResourceLimit { .. } => 3,
            CliError::Unsolvable => 4,
            CliError::InvalidPlan(_) => 5,
        }
    }
}

impl From<CompileError> for CliError {
    fn from(e: CompileError) -> CliError {
        CliError::InvalidPlan(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
