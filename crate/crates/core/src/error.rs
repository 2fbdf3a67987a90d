use thiserror::Error;

use crate::fou::FouError;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad or inconsistent input data (files, labels, schemas).
    Input,
    /// The inputs were well formed but the computation could not proceed.
    Computation,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid FOU for {context}: {source}")]
    InvalidFou {
        context: String,
        #[source]
        source: FouError,
    },

    #[error("alpha {alpha} exceeds membership height {height}")]
    AlphaOutOfRange { alpha: f64, height: f64 },

    #[error("invalid domain scale [{min}, {max}]")]
    InvalidScale { min: f64, max: f64 },

    #[error("invalid grid step {0}")]
    InvalidGridStep(f64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no rule fired for {0}")]
    NoFiredRule(String),

    #[error("length mismatch: {what} ({left} vs {right})")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown label `{label}` for variable `{variable}`")]
    UnknownLabel { variable: String, label: String },

    #[error("duplicate label `{label}` in variable `{variable}`")]
    DuplicateLabel { variable: String, label: String },

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("too few intervals: {survived} survived preprocessing, need at least {required}")]
    TooFewIntervals { survived: usize, required: usize },

    #[error("all intervals rejected during {0}")]
    AllRejected(&'static str),

    #[error("interval resampling gave up after {0} attempts")]
    ResampleExhausted(usize),

    #[error("beta {beta} outside [1, {granularity}]")]
    BetaOutOfRange { beta: f64, granularity: usize },

    #[error("scenario has no welders")]
    EmptyScenario,

    #[error("welder {id}: {source}")]
    Welder {
        id: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::AlphaOutOfRange { .. }
            | Error::Degenerate(_)
            | Error::NoFiredRule(_)
            | Error::TooFewIntervals { .. }
            | Error::AllRejected(_)
            | Error::ResampleExhausted(_)
            | Error::BetaOutOfRange { .. } => ErrorClass::Computation,
            Error::Welder { source, .. } => source.class(),
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn invalid_fou(context: impl Into<String>, source: FouError) -> Self {
        Error::InvalidFou {
            context: context.into(),
            source,
        }
    }
}
