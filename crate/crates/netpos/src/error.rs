use std::io;
use std::path::PathBuf;

use netpos_core::centrality::CentralityError;
use netpos_core::features::FeatureError;
use netpos_core::stats::StatsError;
use netpos_core::synthetic::SyntheticError;
use netpos_core::GraphError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{context}line {line}: {message}")]
    Parse {
        context: String,
        line: u64,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Features(#[from] FeatureError),
    #[error(transparent)]
    Synthetic(#[from] SyntheticError),
    #[error(transparent)]
    Model(#[from] StatsError),
    #[error("{0} verification check(s) failed")]
    Verification(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(path: Option<&std::path::Path>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            context: path
                .map(|p| format!("{}: ", p.display()))
                .unwrap_or_default(),
            line,
            message: message.into(),
        }
    }

    /// Names the file a parse error came from.
    pub fn in_file(self, path: &std::path::Path) -> Self {
        match self {
            Error::Parse {
                context,
                line,
                message,
            } if context.is_empty() => Error::Parse {
                context: format!("{}: ", path.display()),
                line,
                message,
            },
            Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Write { .. } | Error::Verification(_) => exit::FAILURE,
            Error::Model(StatsError::RankDeficient { .. })
            | Error::Model(StatsError::TooFewObservations { .. }) => exit::NUMERICAL,
            Error::Model(StatsError::NotNested(_)) => exit::NUMERICAL,
            _ => exit::INPUT,
        }
    }
}
