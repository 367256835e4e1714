//! Survival curves, cross-moments, and CLT confidence intervals for the
//! looped hitting-time estimator.
//!
//! The looped times `{τ̂(t)}` over one window are identically distributed
//! but serially dependent, so the variance of their mean needs the full
//! autocovariance structure:
//!
//! ```text
//! Var(Σ_t τ̂(t)) ≈ T·ĉ(0) + 2 Σ_{i=1}^{L} ĉ(i) (T - i),
//! ĉ(i) = (1/T) Σ_{t=i} τ̂(t-i) τ̂(t)  -  mean²,
//! ```
//!
//! truncated at a lag `L` past which the dependence is negligible (default
//! `⌈10·log₁₀ T⌉`, overridable). The normalized mean is asymptotically
//! standard normal, which turns the truncated variance into the confidence
//! interval reported by [`confidence_interval`]. Truncation can produce a
//! slightly negative variance on short windows; it is clamped at zero and
//! flagged. An optional Bartlett taper (weight `1 - i/(L+1)` on lag `i`)
//! guarantees nonnegativity at the price of a little extra smoothing.
//!
//! All moment estimators here require every looped time to be finite —
//! an `Infinite` time means the event was never seen even once around the
//! loop, and no second moment exists on that sample
//! ([`Error::InfiniteMoment`]). The survival curve has no such requirement:
//! an infinite time simply counts as exceeding every finite `s`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hitting::looped_hitting_times;
use crate::numeric::normal_quantile;
use crate::series::{ExtendedTime, TimeSeries};
use crate::threshold::ThresholdSchedule;

/// Point estimate of the mean exceedance time with CLT uncertainty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceedanceEstimate {
    /// Estimated mean waiting time (in sample steps).
    pub point: f64,
    /// Standard error of the mean from the truncated CLT variance.
    pub std_error: f64,
    /// Two-sided confidence interval at the requested level.
    pub ci: (f64, f64),
    /// Number of start indices contributing (the window length `T`).
    pub n_used: usize,
    /// Starts whose wait resolved only via the loop past the window edge.
    pub n_censored_resolved: usize,
    /// Truncation lag actually used for the variance.
    pub max_lag_used: usize,
    /// True when the truncated variance came out negative and was clamped
    /// to zero — treat the interval as unreliable and raise the lag or
    /// enable the Bartlett taper.
    pub variance_clamped: bool,
}

/// Options for [`estimate_return_time`].
#[derive(Debug, Clone)]
pub struct EstimateOptions {
    /// Confidence level `γ` of the interval (e.g. `0.95`).
    pub gamma: f64,
    /// Variance truncation lag; `None` uses `⌈10·log₁₀ T⌉`.
    pub max_lag: Option<usize>,
    /// Weight lag `i` by `1 - i/(L+1)` (Bartlett), guaranteeing a
    /// nonnegative variance estimate.
    pub bartlett: bool,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            gamma: 0.95,
            max_lag: None,
            bartlett: false,
        }
    }
}

/// Default variance truncation lag, `⌈10·log₁₀ T⌉`, capped at `T - 1`.
pub fn default_max_lag(t_len: usize) -> usize {
    let l = (10.0 * (t_len as f64).log10()).ceil() as usize;
    l.min(t_len.saturating_sub(1))
}

/// Empirical survival curve of the looped times: for each `s` in `s_grid`,
/// `(1/T) Σ_t 1(τ̂(t) > s)`, with `Infinite` counting as beyond every `s`.
pub fn survival_curve_estimate(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    s_grid: &[usize],
) -> Vec<f64> {
    survival_from_times(&looped_hitting_times(series, schedule), s_grid)
}

/// [`survival_curve_estimate`] on precomputed looped times.
pub fn survival_from_times(times: &[ExtendedTime], s_grid: &[usize]) -> Vec<f64> {
    let t_len = times.len() as f64;
    s_grid
        .iter()
        .map(|&s| {
            let count = times
                .iter()
                .filter(|&&tau| tau > ExtendedTime::Finite(s))
                .count();
            count as f64 / t_len
        })
        .collect()
}

/// Raw lagged cross-moment `(1/T) Σ_{t=i}^{T-1} τ̂(t-i)·τ̂(t)`.
///
/// Errors with [`Error::InfiniteMoment`] if any looped time is infinite
/// and with a configuration error if `lag ≥ T`.
pub fn cross_moment_estimate(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    lag: usize,
) -> Result<f64> {
    cross_moment_from_times(&looped_hitting_times(series, schedule), lag)
}

/// [`cross_moment_estimate`] on precomputed looped times.
pub fn cross_moment_from_times(times: &[ExtendedTime], lag: usize) -> Result<f64> {
    let finite = finite_times(times)?;
    if lag >= finite.len() {
        return Err(Error::Config(format!(
            "cross-moment lag {lag} must be below the window length {}",
            finite.len()
        )));
    }
    // Products of two times, each < 2T, summed over T terms: u128 holds
    // this exactly, and one division keeps the result correctly rounded.
    let acc: u128 = (lag..finite.len())
        .map(|t| finite[t - lag] as u128 * finite[t] as u128)
        .sum();
    Ok(acc as f64 / finite.len() as f64)
}

/// Truncated CLT variance of `Σ_t τ̂(t)`, clamped at zero.
///
/// See the module docs for the expansion. Prefer
/// [`clt_variance_detailed`] when the clamp flag matters.
pub fn clt_variance(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    max_lag: usize,
) -> Result<f64> {
    clt_variance_detailed(&looped_hitting_times(series, schedule), max_lag, false)
        .map(|(var, _)| var)
}

/// Truncated CLT variance on precomputed times, returning
/// `(variance, clamped)` and optionally applying the Bartlett taper.
pub fn clt_variance_detailed(
    times: &[ExtendedTime],
    max_lag: usize,
    bartlett: bool,
) -> Result<(f64, bool)> {
    let finite = finite_times(times)?;
    let t_len = finite.len();
    if max_lag >= t_len {
        return Err(Error::Config(format!(
            "variance truncation lag {max_lag} must be below the window length {t_len}"
        )));
    }
    let mean = finite.iter().map(|&v| v as u128).sum::<u128>() as f64 / t_len as f64;
    let centered = |lag: usize| -> f64 {
        let acc: u128 = (lag..t_len)
            .map(|t| finite[t - lag] as u128 * finite[t] as u128)
            .sum();
        acc as f64 / t_len as f64 - mean * mean
    };
    let mut var = t_len as f64 * centered(0);
    for i in 1..=max_lag {
        let weight = if bartlett {
            1.0 - i as f64 / (max_lag as f64 + 1.0)
        } else {
            1.0
        };
        var += 2.0 * weight * centered(i) * (t_len - i) as f64;
    }
    if var < 0.0 {
        Ok((0.0, true))
    } else {
        Ok((var, false))
    }
}

/// Mean exceedance time with a two-sided CLT confidence interval at level
/// `gamma`, using variance truncation lag `max_lag`.
///
/// Errors with [`Error::InfiniteMoment`] when any looped time is infinite
/// (the point estimate would be infinite and no CI exists), and with a
/// configuration error for `gamma ∉ [0, 1)` or `max_lag ≥ T`.
pub fn confidence_interval(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    gamma: f64,
    max_lag: usize,
) -> Result<ExceedanceEstimate> {
    estimate_from_times(
        &looped_hitting_times(series, schedule),
        gamma,
        max_lag,
        false,
    )
}

/// High-level entry point: looped times, CLT variance at the default (or
/// requested) truncation lag, and the confidence interval, in one call.
pub fn estimate_return_time(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    options: &EstimateOptions,
) -> Result<ExceedanceEstimate> {
    let times = looped_hitting_times(series, schedule);
    let max_lag = options.max_lag.unwrap_or_else(|| default_max_lag(series.len()));
    estimate_from_times(&times, options.gamma, max_lag, options.bartlett)
}

/// Full estimate from precomputed looped times.
pub fn estimate_from_times(
    times: &[ExtendedTime],
    gamma: f64,
    max_lag: usize,
    bartlett: bool,
) -> Result<ExceedanceEstimate> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::Config(format!(
            "confidence level must be in [0, 1), got {gamma}"
        )));
    }
    let t_len = times.len();
    let finite = finite_times(times)?;
    let point = finite.iter().map(|&v| v as u128).sum::<u128>() as f64 / t_len as f64;
    let (var, clamped) = clt_variance_detailed(times, max_lag, bartlett)?;
    let std_error = var.sqrt() / t_len as f64;
    let z = if gamma == 0.0 {
        0.0
    } else {
        normal_quantile((1.0 + gamma) / 2.0)
    };
    // A start resolved through the loop exactly when its hit lies past the
    // window edge.
    let n_censored_resolved = finite
        .iter()
        .enumerate()
        .filter(|&(t, &tau)| t + tau >= t_len)
        .count();
    Ok(ExceedanceEstimate {
        point,
        std_error,
        ci: (point - z * std_error, point + z * std_error),
        n_used: t_len,
        n_censored_resolved,
        max_lag_used: max_lag,
        variance_clamped: clamped,
    })
}

/// All times as plain integers, or [`Error::InfiniteMoment`].
fn finite_times(times: &[ExtendedTime]) -> Result<Vec<usize>> {
    times
        .iter()
        .map(|tau| tau.finite().ok_or(Error::InfiniteMoment))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::new(values.to_vec()).unwrap()
    }

    #[test]
    fn survival_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        // Looped times are {0, 2, 1, 0}.
        assert_eq!(survival_curve_estimate(&s, &sch, &[0]), vec![0.5]);
        assert_eq!(
            survival_curve_estimate(&s, &sch, &[0, 1, 2]),
            vec![0.5, 0.25, 0.0]
        );
        // Region containing everything: all times 0.
        let everything = ThresholdSchedule::constant(f64::NEG_INFINITY);
        assert_eq!(survival_curve_estimate(&s, &everything, &[0]), vec![0.0]);
        // No exceedance ever: survival stays 1 at any horizon.
        let s2 = series(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(
            survival_curve_estimate(&s2, &sch, &[1_000_000]),
            vec![1.0]
        );
    }

    #[test]
    fn survival_is_monotone_and_layer_cake_consistent() {
        let s = series(&[3.0, 0.2, 5.0, 0.4, 0.1, 7.0, 2.0, 0.3]);
        let sch = ThresholdSchedule::constant(1.0);
        let times = looped_hitting_times(&s, &sch);
        let max = times.iter().map(|t| t.finite().unwrap()).max().unwrap();
        let grid: Vec<usize> = (0..max).collect();
        let surv = survival_from_times(&times, &grid);
        for w in surv.windows(2) {
            assert!(w[0] >= w[1]);
        }
        // Σ_s P(τ̂ > s) over s = 0..max equals the mean exactly.
        let mean = crate::hitting::mean_exceedance_estimate(&s, &sch).unwrap();
        assert_relative_eq!(surv.iter().sum::<f64>(), mean, max_relative = 1e-12);
    }

    #[test]
    fn cross_moment_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        assert_eq!(cross_moment_estimate(&s, &sch, 0).unwrap(), 1.25);
        assert_eq!(cross_moment_estimate(&s, &sch, 1).unwrap(), 0.5);
        let everything = ThresholdSchedule::constant(f64::NEG_INFINITY);
        assert_eq!(cross_moment_estimate(&s, &everything, 2).unwrap(), 0.0);
        // Infinite time: moment undefined.
        let s2 = series(&[1.0, 1.0]);
        assert!(matches!(
            cross_moment_estimate(&s2, &sch, 0),
            Err(Error::InfiniteMoment)
        ));
        // Lag out of range.
        assert!(matches!(
            cross_moment_estimate(&s, &sch, 4),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn clt_variance_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        // L = 0: T·(m₂ - mean²) = 4·(1.25 - 0.5625) = 2.75.
        assert_eq!(clt_variance(&s, &sch, 0).unwrap(), 2.75);
    }

    #[test]
    fn clt_variance_lag0_is_t_times_empirical_variance() {
        let s = series(&[2.0, 9.0, 0.5, 3.0, 8.0, 0.1, 0.2, 4.0, 7.0]);
        let sch = ThresholdSchedule::constant(3.5);
        let times = looped_hitting_times(&s, &sch);
        let vals: Vec<f64> = times.iter().map(|t| t.finite().unwrap() as f64).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let emp_var = vals.iter().map(|v| v * v).sum::<f64>() / vals.len() as f64 - mean * mean;
        let clt = clt_variance(&s, &sch, 0).unwrap();
        assert_relative_eq!(clt, vals.len() as f64 * emp_var, max_relative = 1e-12);
    }

    #[test]
    fn confidence_interval_examples() {
        // Region containing everything: zero-variance, degenerate CI.
        let s = series(&[1.0, 2.0, 3.0, 4.0]);
        let everything = ThresholdSchedule::constant(f64::NEG_INFINITY);
        let est = confidence_interval(&s, &everything, 0.95, 0).unwrap();
        assert_eq!(est.point, 0.0);
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.ci, (0.0, 0.0));
        assert!(!est.variance_clamped);

        // γ = 0 degenerates at the point whatever the variance.
        let s2 = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        let est2 = confidence_interval(&s2, &sch, 0.0, 0).unwrap();
        assert_eq!(est2.ci, (est2.point, est2.point));
        assert!(est2.std_error > 0.0);

        // Infinite point: no CI.
        let s3 = series(&[1.0, 1.0]);
        assert!(matches!(
            confidence_interval(&s3, &sch, 0.95, 0),
            Err(Error::InfiniteMoment)
        ));

        // Bad level.
        assert!(matches!(
            confidence_interval(&s2, &sch, 1.0, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn censored_resolution_count() {
        // Times for [1,5,1,1] at b=4 are {1, 0, 3, 2}; the waits from
        // t = 2, 3 hit only past the window edge.
        let s = series(&[1.0, 5.0, 1.0, 1.0]);
        let sch = ThresholdSchedule::constant(4.0);
        let est = confidence_interval(&s, &sch, 0.95, 0).unwrap();
        assert_eq!(est.point, 1.5);
        assert_eq!(est.n_used, 4);
        assert_eq!(est.n_censored_resolved, 2);
    }

    #[test]
    fn point_matches_closed_form_mean() {
        let s = series(&[0.3, 6.0, 0.1, 0.9, 7.5, 0.2, 0.4, 9.0, 1.1, 0.6]);
        let sch = ThresholdSchedule::constant(5.0);
        let est = confidence_interval(&s, &sch, 0.9, 2).unwrap();
        let mean = crate::hitting::mean_exceedance_estimate(&s, &sch).unwrap();
        assert_eq!(est.point.to_bits(), mean.to_bits());
        assert!(est.ci.0 <= est.point && est.point <= est.ci.1);
    }

    #[test]
    fn ci_width_shrinks_like_sqrt_t() {
        // On series with independent exceedances the width must scale as
        // 1/√T: doubling T shrinks the average width to ≈ 0.707×.
        use crate::rng::SeededRng;
        let mut widths = [0.0_f64; 2];
        let reps = 100;
        for (idx, t_len) in [2000_usize, 4000].into_iter().enumerate() {
            let mut total = 0.0;
            for rep in 0..reps {
                let mut rng = SeededRng::fork(777, (idx * reps + rep) as u64);
                let values: Vec<f64> = (0..t_len).map(|_| rng.standard_normal()).collect();
                let s = TimeSeries::new(values).unwrap();
                let sch = ThresholdSchedule::constant(1.5);
                let est = estimate_return_time(&s, &sch, &EstimateOptions::default()).unwrap();
                total += est.ci.1 - est.ci.0;
            }
            widths[idx] = total / reps as f64;
        }
        let ratio = widths[1] / widths[0];
        assert!(
            (0.65..=0.75).contains(&ratio),
            "width ratio {ratio} outside [0.65, 0.75]"
        );
    }

    #[test]
    fn bartlett_taper_tames_truncation_artifacts() {
        // The plug-in centering (raw cross-moment minus squared mean) can
        // go slightly negative on truncation; on a realistic window the
        // taper keeps the variance positive across a whole sweep of lags.
        use crate::rng::SeededRng;
        let mut rng = SeededRng::new(4242);
        let mut v = 0.0_f64;
        let values: Vec<f64> = (0..3000)
            .map(|_| {
                v = 0.8 * v + rng.standard_normal();
                v
            })
            .collect();
        let s = TimeSeries::new(values).unwrap();
        let sch = ThresholdSchedule::constant(1.8);
        let times = looped_hitting_times(&s, &sch);
        for lag in [0, 5, 20, 60, 200] {
            let (var, clamped) = clt_variance_detailed(&times, lag, true).unwrap();
            assert!(var >= 0.0);
            assert!(!clamped, "taper clamped at lag {lag}");
            // Output is clamped-nonnegative in the plain variant too.
            let (plain, _) = clt_variance_detailed(&times, lag, false).unwrap();
            assert!(plain >= 0.0);
        }
    }

    proptest! {
        /// Survival curves are probabilities, non-increasing, and satisfy
        /// the layer-cake identity against the mean.
        #[test]
        fn survival_properties(
            values in prop::collection::vec(0.0_f64..10.0, 2..60),
            level in 0.0_f64..9.0,
        ) {
            let s = series(&values);
            let sch = ThresholdSchedule::constant(level);
            let times = looped_hitting_times(&s, &sch);
            let grid: Vec<usize> = (0..2 * values.len()).collect();
            let surv = survival_from_times(&times, &grid);
            for w in surv.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
            for &p in &surv {
                prop_assert!((0.0..=1.0).contains(&p));
            }
            if times.iter().all(|t| t.is_finite()) {
                let mean = crate::hitting::mean_exceedance_estimate(&s, &sch).unwrap();
                let total: f64 = surv.iter().sum();
                prop_assert!((total - mean).abs() <= 1e-9 * (1.0 + mean));
            }
        }
    }
}
