use std::fmt;

/// Failure of a CLI run, mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Module(qpendulum::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io(_) => 2,
            CliError::Module(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Module(e) => e.kind(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Module(e) => e.to_string(),
        };
        // One line, whatever the source message looks like.
        write!(f, "error kind={}: {}", self.kind(), msg.replace('\n', " "))
    }
}

impl From<qpendulum::Error> for CliError {
    fn from(e: qpendulum::Error) -> Self {
        CliError::Module(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
