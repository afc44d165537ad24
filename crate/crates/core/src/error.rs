use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    /// Cancellation consumed every digit that was still known.
    #[error("p-adic precision loss: cancellation consumed all {digits} known digits")]
    PrecisionLoss { digits: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector where a nonzero representative is required")]
    ZeroVector,

    #[error("matrix is not invertible{0}")]
    Singular(String),

    #[error("invalid epsilon {0}: must satisfy 0 < epsilon < 1/4")]
    InvalidEpsilon(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generators do not generate a dense subgroup")]
    NotDense,

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("Lie algebra structure constants invalid: {0}")]
    InvalidAlgebra(String),

    #[error("parse error{location}: {message}")]
    Parse { message: String, location: Location },
}

/// Position inside a malformed input, rendered as ` at line L, column C` or
/// ` at field F`.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Location {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, " at line {l}, column {c}")?,
            (Some(l), None) => write!(f, " at line {l}")?,
            _ => {}
        }
        if let Some(field) = &self.field {
            write!(f, " at field {field}")?;
        }
        Ok(())
    }
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
            location: Location::default(),
        }
    }

    pub(crate) fn parse_at_line(message: impl Into<String>, line: usize) -> Self {
        Error::Parse {
            message: message.into(),
            location: Location {
                line: Some(line),
                ..Location::default()
            },
        }
    }

    pub(crate) fn parse_at_field(message: impl Into<String>, field: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
            location: Location {
                field: Some(field.into()),
                ..Location::default()
            },
        }
    }

    /// Short machine-readable tag for structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::PrecisionLoss { .. } => "precision_loss",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::Singular(_) => "singular",
            Error::InvalidEpsilon(_) => "invalid_epsilon",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotDense => "not_dense",
            Error::Inconsistent(_) => "inconsistent",
            Error::InvalidAlgebra(_) => "invalid_algebra",
            Error::Parse { .. } => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        Error::Parse {
            message,
            location: Location {
                line: Some(e.line()),
                column: Some(e.column()),
                field: None,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
