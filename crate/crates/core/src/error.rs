use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("asset code `{0}` has no metadata entry")]
    UnknownAsset(String),

    #[error("invalid metadata at line {line}: {reason}")]
    InvalidMetadata { line: usize, reason: String },

    #[error("invalid price `{value}` for {code} on {date}: {reason}")]
    InvalidPrice {
        date: String,
        code: String,
        value: String,
        reason: &'static str,
    },

    #[error("invalid date `{0}` (expected YYYY-MM-DD)")]
    InvalidDate(String),

    #[error("date {0} appears more than once")]
    DuplicateDate(String),

    #[error("only {found} usable dates, at least {required} required")]
    TooFewDates { found: usize, required: usize },

    #[error("only {0} assets, at least 2 required")]
    TooFewAssets(usize),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("asset {code} has volatility {sigma:e}, below the peg guard {tolerance:e}")]
    PeggedSeries {
        code: String,
        sigma: f64,
        tolerance: f64,
    },

    #[error("return panel must be normalized first")]
    NotNormalized,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("need at least {required} samples, got {found}")]
    TooFewSamples { found: usize, required: usize },

    #[error("only {found} tail points above x_min, at least {required} required")]
    TooFewTailPoints { found: usize, required: usize },

    #[error("tail contains non-positive values (x_min = {0})")]
    NonPositiveTail(f64),

    #[error("empty input")]
    EmptyInput,

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not a valid correlation matrix: {0}")]
    InvalidCorrelation(String),

    #[error("distance matrix entry ({0}, {1}) is not finite")]
    NonFiniteDistance(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
