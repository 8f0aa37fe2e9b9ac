//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by metric computation, reference sampling, and data
/// ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// The test set contains only one class, so rates conditional on
    /// prevalence are undefined.
    #[error("degenerate prevalence: test set has no {missing} instances")]
    DegeneratePrevalence {
        /// Which class is absent, `"positive"` or `"negative"`.
        missing: &'static str,
    },

    /// Paired inputs have different lengths.
    #[error("length mismatch: {left} labels vs {right} predictions")]
    LengthMismatch { left: usize, right: usize },

    /// An operation that needs at least one instance received none.
    #[error("empty input: at least one instance is required")]
    EmptyInput,

    /// A score is NaN or infinite and cannot be thresholded.
    #[error("non-finite score at index {index}")]
    NonFiniteScore { index: usize },

    /// Rate parameters violate their domain.
    #[error("invalid rates: {0}")]
    InvalidRates(String),

    /// A curve has fewer than two distinct x values, so it encloses no area.
    #[error("curve area needs at least two distinct x values")]
    DegenerateCurve,

    /// An interpolation query lies outside the span of a curve's x values.
    #[error("x = {x} is outside the curve's x-range [{min}, {max}]")]
    InterpolationOutOfRange { x: f64, min: f64, max: f64 },

    /// A malformed input file, with the offending line when known.
    #[error("{path}:{line}: {message}")]
    DataValidation {
        path: String,
        line: u64,
        message: String,
    },

    /// A cached reference pool file is malformed or does not match the
    /// requested configuration.
    #[error("pool cache {path}: {message}")]
    PoolCache { path: String, message: String },

    /// A request is internally inconsistent (bad metric name, empty grid,
    /// out-of-range parameter).
    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the command-line interface: 1 for usage errors,
    /// 2 for data problems, 3 for degenerate prevalence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegeneratePrevalence { .. } => 3,
            Error::InvalidRequest(_) => 1,
            _ => 2,
        }
    }
}
