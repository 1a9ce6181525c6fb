//! CLI error type and its exit-code mapping.

use std::path::{Path, PathBuf};

/// Process exit code: success.
pub const EXIT_OK: i32 = 0;
/// Process exit code: a verification or recoverability failure.
pub const EXIT_VERIFICATION: i32 = 1;
/// Process exit code: invalid usage, parameters, or spec content.
pub const EXIT_USAGE: i32 = 2;
/// Process exit code: an operating-system I/O failure.
pub const EXIT_IO: i32 = 3;

/// Any failure a command can surface, bucketed by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad parameters or malformed spec content (exit 2).
    #[error("{0}")]
    Usage(String),
    /// A verification failed or data is unrecoverable (exit 1).
    #[error("{0}")]
    Verification(String),
    /// An OS-level I/O failure (exit 3).
    #[error("{path}: {source}")]
    Io {
        /// The file or directory involved.
        path: PathBuf,
        /// The underlying failure.
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Builds a usage error from anything displayable.
    pub fn usage(msg: impl std::fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    /// Builds a verification error from anything displayable.
    pub fn verification(msg: impl std::fmt::Display) -> Self {
        CliError::Verification(msg.to_string())
    }

    /// Wraps an I/O failure with the path it hit.
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().to_path_buf(), source }
    }

    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_match_the_documented_mapping() {
        assert_eq!(CliError::usage("x").exit_code(), 2);
        assert_eq!(CliError::verification("x").exit_code(), 1);
        let io = CliError::io("/nope", std::io::Error::from(std::io::ErrorKind::NotFound));
        assert_eq!(io.exit_code(), 3);
        assert!(io.to_string().contains("/nope"));
    }
}
