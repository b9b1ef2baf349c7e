use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
    /// The sweep ran to completion but some rows hit a hard solver error.
    #[error("{failed} of {total} rows failed")]
    Solver { failed: usize, total: usize },
    #[error("solver: {0}")]
    Numerical(#[from] dicke_core::Error),
}

impl SweepError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    /// Process exit status: 1 I/O, 2 config, 3 solver.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } => 1,
            Self::Config(_) => 2,
            Self::Solver { .. } | Self::Numerical(_) => 3,
        }
    }
}

pub type Result<T, E = SweepError> = std::result::Result<T, E>;
