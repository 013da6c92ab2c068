use std::path::PathBuf;

use accbt::compiler::CompileError;
use accbt::eval::EvalError;
use accbt::RlError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: CompileError },
    #[error("{path}: {source}")]
    Compile { path: PathBuf, source: CompileError },
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Compatibility(String),
    #[error(transparent)]
    Eval(EvalError),
    #[error(transparent)]
    Train(RlError),
}

impl CliError {
    /// 2 usage or parse, 3 compile, 4 config, 5 compatibility.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Compile { .. } => 3,
            CliError::Config(_) => 4,
            CliError::Compatibility(_) => 5,
            CliError::Eval(e) => match e {
                EvalError::SchemaVersion(_) | EvalError::MismatchedScenarios(..) => 5,
                EvalError::InvalidConfig(_) | EvalError::Format(_) => 2,
                EvalError::Grid(_) => 4,
                EvalError::Tree(_) => 1,
            },
            CliError::Train(e) => match e {
                RlError::UnknownAction(_)
                | RlError::NonLearnedAction(_)
                | RlError::NoAccTable(_)
                | RlError::NoCodec(_)
                | RlError::UnknownPreset(_)
                | RlError::InvalidReward(_)
                | RlError::InvalidHyperparameters(_)
                | RlError::Grid(_) => 4,
                RlError::Format(_) | RlError::Incompatible(_) => 5,
                RlError::Io(_) | RlError::Tree(_) => 1,
            },
        }
    }

    pub fn from_compile(path: PathBuf, source: CompileError) -> Self {
        match source {
            CompileError::Syntax { .. } | CompileError::DuplicateAction { .. } | CompileError::EmptyGoalList => {
                CliError::Parse { path, source }
            }
            _ => CliError::Compile { path, source },
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Eval(e)
    }
}

impl From<RlError> for CliError {
    fn from(e: RlError) -> Self {
        CliError::Train(e)
    }
}
