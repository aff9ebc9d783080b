use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by data loading, model fitting and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed csv in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path} is empty")]
    EmptyFile { path: PathBuf },

    /// `row` is the 1-based data row (header excluded), `col` the 1-based
    /// column position in the file.
    #[error("{path}: cell at row {row}, column {col} is not a finite number (got {value:?})")]
    NonNumericCell {
        path: PathBuf,
        row: usize,
        col: usize,
        value: String,
    },

    #[error("{path}: no column named {name:?}")]
    UnknownColumn { path: PathBuf, name: String },

    #[error("need at least 2 feature columns, found {found}")]
    TooFewFeatures { found: usize },

    #[error("need at least {need} rows, found {found}")]
    TooFewRows { need: usize, found: usize },

    #[error("expected {expected} columns, got {got}")]
    ColumnMismatch { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("training data contains rows labelled as outliers")]
    OutlierRowsInTraining,

    #[error("operation requires labelled data")]
    Unlabeled,

    #[error("both classes must be present")]
    SingleClass,

    #[error("class {class} has {found} rows, need at least {need}")]
    ClassTooSmall {
        class: &'static str,
        found: usize,
        need: usize,
    },

    #[error("linear system is singular or not positive definite")]
    SingularSystem,

    /// Wraps a failure inside cross-validation with the fold it happened in.
    #[error("repetition {repetition}, fold {fold}: {source}")]
    Fold {
        repetition: usize,
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
