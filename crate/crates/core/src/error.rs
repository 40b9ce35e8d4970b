//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors raised by the ingest, statistics, learner, curve, and experiment
/// operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input text contained no data rows.
    EmptyInput,
    /// A CSV row had a different cell count than the header.
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    /// A cell in a numeric column failed to parse.
    NumericParse {
        row: usize,
        column: String,
        cell: String,
    },
    /// A referenced column name does not exist in the schema.
    UnknownColumn { name: String },
    /// A schema failed validation (duplicate names, missing label, ...).
    InvalidSchema(String),
    /// Requested a partition needing more rows than are available.
    InsufficientRows { required: usize, available: usize },
    /// Labels contain only one class where both are required.
    DegenerateLabel,
    /// A per-class group is too small for the requested statistic.
    InsufficientGroup { class: u8, len: usize },
    /// Pooled standard deviation is undefined (n1 + n2 ≤ 2).
    UndefinedPooledSd,
    /// odds(1) is infinite.
    InfiniteOdds,
    /// Probability outside [0, 1).
    OddsDomain { p: f64 },
    /// A categorical column has a single observed level; no 2×2 table exists.
    ConstantColumn,
    /// A matrix has no feature columns to work with.
    NoFeatures,
    /// Matrix width does not match what a model was trained on.
    ShapeMismatch { expected: usize, found: usize },
    /// Input contains NaN or infinite values.
    NonFiniteInput,
    /// Evaluation over zero rows.
    EmptyEvaluation,
    /// A learning curve retained fewer than three usable points.
    InsufficientCurve { points: usize },
    /// All regressor values identical; the least-squares system is singular.
    SingularDesign,
    /// The regressor has zero variance.
    ZeroVariance,
    /// A correlation summary needs at least three scatter points.
    InsufficientPoints { required: usize, found: usize },
    /// A generator or experiment configuration failed validation.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "input contains no data"),
            Error::RaggedRow {
                line,
                expected,
                found,
            } => write!(
                f,
                "ragged row at line {line}: expected {expected} cells, found {found}"
            ),
            Error::NumericParse { row, column, cell } => {
                write!(f, "row {row}, column '{column}': cannot parse '{cell}' as a number")
            }
            Error::UnknownColumn { name } => write!(f, "unknown column '{name}'"),
            Error::InvalidSchema(msg) => write!(f, "invalid schema: {msg}"),
            Error::InsufficientRows {
                required,
                available,
            } => write!(f, "need {required} rows but only {available} are available"),
            Error::DegenerateLabel => write!(f, "labels contain a single class"),
            Error::InsufficientGroup { class, len } => {
                write!(f, "class {class} has only {len} value(s); need at least 2")
            }
            Error::UndefinedPooledSd => write!(f, "pooled standard deviation undefined: n1 + n2 <= 2"),
            Error::InfiniteOdds => write!(f, "odds are infinite at p = 1"),
            Error::OddsDomain { p } => write!(f, "probability {p} outside [0, 1)"),
            Error::ConstantColumn => write!(f, "categorical column has a single observed level"),
            Error::NoFeatures => write!(f, "no feature columns"),
            Error::ShapeMismatch { expected, found } => {
                write!(f, "expected {expected} columns, found {found}")
            }
            Error::NonFiniteInput => write!(f, "input contains non-finite values"),
            Error::EmptyEvaluation => write!(f, "cannot evaluate on zero rows"),
            Error::InsufficientCurve { points } => {
                write!(f, "learning curve has {points} usable point(s); need at least 3")
            }
            Error::SingularDesign => write!(f, "regressor values are all identical"),
            Error::ZeroVariance => write!(f, "regressor has zero variance"),
            Error::InsufficientPoints { required, found } => {
                write!(f, "need {required} scatter points, found {found}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
