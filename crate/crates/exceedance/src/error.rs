//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants are grouped by the
//! kind of failure so the CLI can map them onto distinct exit codes:
//! invalid configuration, bad input data, and numeric breakdowns are
//! different problems and callers routinely branch on which one occurred.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by estimation, calibration, simulation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or configuration value is outside its legal range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Input data is malformed or unusable (empty series, non-finite
    /// values, unparseable rows, ...).
    #[error("bad data: {0}")]
    Data(String),

    /// A numeric routine failed to converge or produced a value that
    /// violates a hard invariant.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A time index was outside the observed window.
    #[error("time index {index} out of range for series of length {len}")]
    TimeOutOfRange { index: usize, len: usize },

    /// The series never enters the threshold region, so run-based
    /// estimators have nothing to work with.
    #[error("series never exceeds the threshold")]
    NoExceedance,

    /// A moment estimate involves an infinite looped hitting time; the
    /// requested cross-moment or variance does not exist on this sample.
    #[error("infinite looped hitting time: moment estimate undefined")]
    InfiniteMoment,

    /// A ratio statistic (tail dependence, cluster size, ...) has an empty
    /// denominator on this window: the conditioning event never occurs.
    #[error("statistic undefined on this window: {0}")]
    UndefinedStatistic(String),

    /// A transit time could not be resolved inside the observed window.
    /// `lower_bound` is the one-sided bound implied by the visible data:
    /// the true transit time is at least this large.
    #[error("transit time censored by the window edge; it is at least {lower_bound}")]
    CensoredTransit { lower_bound: usize },

    /// Every start index is already censored, so the discard-censored
    /// comparator has an empty prefix to average over.
    #[error("no uncensored prefix: the first start index is already censored")]
    EmptyUncensoredPrefix,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 data, 4 numeric.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) => 2,
            Error::Data(_) | Error::Io(_) | Error::Json(_) | Error::TimeOutOfRange { .. } => 3,
            Error::Numeric(_)
            | Error::NoExceedance
            | Error::InfiniteMoment
            | Error::UndefinedStatistic(_)
            | Error::CensoredTransit { .. }
            | Error::EmptyUncensoredPrefix => 4,
        }
    }
}
