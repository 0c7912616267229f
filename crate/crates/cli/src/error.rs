use serde::Serialize;
use subshift_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}{message}", location(*line, *column))]
    Parse {
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Core(#[from] CoreError),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("{l}:{c}: "),
        (Some(l), None) => format!("{l}: "),
        _ => String::new(),
    }
}

/// The error object written to stderr.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl CliError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            message: message.into(),
            line: Some(line),
            column: Some(column),
        }
    }

    pub fn position(&self) -> (Option<usize>, Option<usize>) {
        match self {
            CliError::Parse { line, column, .. } => (*line, *column),
            _ => (None, None),
        }
    }

    /// `1` malformed input, `2` failed precondition, `3` exhausted budget.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "parse" | "io" | "invalid-input" => 1,
            "precondition" => 2,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                CoreError::Budget { .. }
                | CoreError::SearchBudget { .. }
                | CoreError::EnumerationBudget { .. }
                | CoreError::InsufficientWindow { .. } => "budget",
                CoreError::NotConstantLength
                | CoreError::LengthTooShort(_)
                | CoreError::NotPrimitive
                | CoreError::NotOneToOne
                | CoreError::FiniteSubshift
                | CoreError::MismatchedSystems
                | CoreError::NoFixingPower(_)
                | CoreError::Precondition(_) => "precondition",
                CoreError::UnknownLetter(_)
                | CoreError::DuplicateLetter(_)
                | CoreError::EmptyImage(_)
                | CoreError::EmptyAlphabet
                | CoreError::ChainViolation { .. }
                | CoreError::BadEntryLength { .. }
                | CoreError::MissingSeed(_)
                | CoreError::ForbiddenSeed(_)
                | CoreError::InadmissibleSeed(_)
                | CoreError::EmptyPeriod
                | CoreError::DigitOutOfRange { .. } => "invalid-input",
            },
        }
    }

    pub fn report(&self) -> ErrorReport {
        let (line, column) = self.position();
        let message = match self {
            CliError::Parse { message, .. } => message.clone(),
            other => other.to_string(),
        };
        ErrorReport {
            kind: self.kind(),
            exit_code: self.exit_code(),
            message,
            line,
            column,
        }
    }
}
