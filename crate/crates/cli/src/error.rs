use std::fmt;

use sparse_galois::Error;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    Input,
    Numerical,
}

impl FailureKind {
    pub fn exit_code(self) -> i32 {
        match self {
            FailureKind::Input => 2,
            FailureKind::Numerical => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: FailureKind,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self { kind: FailureKind::Input, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::DimensionUnsupported { .. }
            | Error::EmptySupport { .. }
            | Error::Malformed(_)
            | Error::RankDeficient { .. }
            | Error::Reducible { .. }
            | Error::NotAnalogous
            | Error::Overflow => FailureKind::Input,
            _ => FailureKind::Numerical,
        };
        let message = match &e {
            Error::Reducible { subset, rank } => {
                let names: Vec<String> = subset.iter().map(|i| format!("A{}", i + 1)).collect();
                format!("tuple is reducible: sets {} generate a sublattice of rank {rank}", names.join(", "))
            }
            _ => e.to_string(),
        };
        Self { kind, message }
    }
}
