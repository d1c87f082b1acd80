use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{what}: line {line}, column {column}: {message}")]
    Parse {
        what: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] arq_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn parse(what: &'static str, line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            what,
            line,
            column,
            message: message.into(),
        }
    }

    /// 2 for bad input, 1 when an internal cross-check or I/O failed.
    pub fn exit_code(&self) -> u8 {
        use arq_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(E::CrossCheck { .. } | E::Wraparound { .. } | E::NegativeDimension { .. } | E::Overflow(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
