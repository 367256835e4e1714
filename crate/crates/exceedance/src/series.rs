//! Scalar time series and the extended time axis.
//!
//! A [`TimeSeries`] is a finite window `V_0, ..., V_{T-1}` of real
//! observations taken at a fixed sampling step. Waiting times measured on
//! such a window live on the *extended* axis `{0, 1, 2, ...} ∪ {∞}`:
//! a wait that does not resolve inside the window is `Infinite`, and
//! consumers must treat that as censoring, never clamp it to the window
//! length.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A waiting time in samples, or `Infinite` when the wait never resolved.
///
/// Ordering places `Infinite` above every finite value, so comparisons such
/// as `tau > s` behave like the underlying extended reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtendedTime {
    /// The wait resolved after this many samples (0 = immediately).
    Finite(usize),
    /// The wait did not resolve; downstream estimates stay infinite.
    Infinite,
}

impl ExtendedTime {
    /// `true` when the wait resolved inside the window.
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedTime::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedTime::Finite(v) => Some(v),
            ExtendedTime::Infinite => None,
        }
    }

    /// Convert to `f64`, mapping `Infinite` to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtendedTime::Finite(v) => v as f64,
            ExtendedTime::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtendedTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedTime::Finite(v) => write!(f, "{v}"),
            ExtendedTime::Infinite => write!(f, "inf"),
        }
    }
}

impl From<usize> for ExtendedTime {
    fn from(v: usize) -> Self {
        ExtendedTime::Finite(v)
    }
}

/// A finite window of scalar observations at a fixed sampling step.
///
/// Values must be finite reals and the window must be nonempty. The
/// sampling step (default `1.0`) is bookkeeping for unit conversions in
/// reports; all estimators work in samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    sample_step: f64,
}

impl TimeSeries {
    /// Build a series with unit sampling step.
    ///
    /// Errors if `values` is empty or contains a non-finite entry.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_sample_step(values, 1.0)
    }

    /// Build a series with an explicit sampling step (must be positive).
    pub fn with_sample_step(values: Vec<f64>, sample_step: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Data("time series must be nonempty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!(
                "time series value at index {i} is not finite"
            )));
        }
        if !(sample_step > 0.0 && sample_step.is_finite()) {
            return Err(Error::Config(format!(
                "sample step must be a positive real, got {sample_step}"
            )));
        }
        Ok(Self {
            values,
            sample_step,
        })
    }

    /// Window length `T`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// A series is never empty by construction, but clippy insists.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The observations.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Observation at index `t`.
    pub fn get(&self, t: usize) -> Result<f64> {
        self.values
            .get(t)
            .copied()
            .ok_or(Error::TimeOutOfRange {
                index: t,
                len: self.values.len(),
            })
    }

    /// Sampling step in whatever physical unit the data came in.
    pub fn sample_step(&self) -> f64 {
        self.sample_step
    }
}

impl std::ops::Index<usize> for TimeSeries {
    type Output = f64;
    fn index(&self, t: usize) -> &f64 {
        &self.values[t]
    }
}
