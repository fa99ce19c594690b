use std::io;
use std::path::{Path, PathBuf};

use oodn_core::{ExploitError, ModelError, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KbError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}line {line}, column {column}: {message}", prefix(file))]
    Parse {
        file: Option<PathBuf>,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}field `{field}`: {message}", prefix(file))]
    Schema {
        file: Option<PathBuf>,
        field: String,
        message: String,
    },
    #[error("class `{class}` is invalid:{}", list(violations))]
    Validation {
        class: String,
        violations: Vec<Violation>,
    },
    #[error("registry already holds a class named `{0}`")]
    DuplicateName(String),
    #[error("registry has no class named `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Exploit(#[from] ExploitError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn prefix(file: &Option<PathBuf>) -> String {
    file.as_ref()
        .map(|f| format!("{}: ", f.display()))
        .unwrap_or_default()
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|x| format!("\n  - {x}")).collect()
}

impl KbError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        KbError::Io {
            path: path.to_owned(),
            source,
        }
    }

    /// Attaches the file being read to parse and schema errors.
    pub(crate) fn in_file(self, path: &Path) -> Self {
        match self {
            KbError::Parse {
                line,
                column,
                message,
                ..
            } => KbError::Parse {
                file: Some(path.to_owned()),
                line,
                column,
                message,
            },
            KbError::Schema { field, message, .. } => KbError::Schema {
                file: Some(path.to_owned()),
                field,
                message,
            },
            other => other,
        }
    }

    /// Process exit code: 2 when an exploiter result does not exist, 3 for
    /// invalid classes, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            KbError::Exploit(e) if e.is_does_not_exist() => 2,
            KbError::Exploit(ExploitError::InvalidInput { .. }) | KbError::Validation { .. } => 3,
            _ => 1,
        }
    }
}
