use std::fmt;

/// A failed command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input or options (exit 2).
    Validation(String),
    /// Well-formed input outside a command's domain (exit 3).
    Domain(String),
    /// A result failed its own consistency check (exit 4).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<pentagram::Error> for CliError {
    fn from(e: pentagram::Error) -> Self {
        use pentagram::Error as E;
        match e {
            E::BoundUndefined(_) | E::SizeCap { .. } | E::NotInInstanceSet(_) => CliError::Domain(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
