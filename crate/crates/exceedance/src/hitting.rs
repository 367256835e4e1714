//! Exceedance waiting times on a finite window, with censoring correction.
//!
//! For a series `V_0..V_{T-1}` and a schedule of target regions `β_s`, the
//! *hitting time* started at `t` is `τ(t) = min{s ≥ 0 : V_{t+s} ∈ β_s}`.
//! On a finite window every start close to the right edge is censored: the
//! wait may resolve only after the window ends. Dropping censored starts
//! biases averages toward short waits, so the estimators here use the
//! *looped* correction: when the forward scan runs off the window edge it
//! keeps counting phases while reading the series again from the start,
//!
//! ```text
//! τ̂(t) = min{s ≥ 0 : V_{(t+s) mod T} ∈ β_s},   s ≤ 2T - t - 1,
//! ```
//!
//! and reports `Infinite` when even the wrapped scan finds nothing (the
//! wrap never scans a phase twice, so the budget `2T - t - 1` is exact, not
//! a tuning knob). Averages of looped times are unbiased for the underlying
//! mean waiting time conditional on resolution, which is what makes return
//! levels far beyond the window length estimable at all.
//!
//! For a *constant* threshold the whole family of looped times is a
//! function of the exceedance set alone: if `θ_1 < ... < θ_n` are the
//! exceedance indices and `Δθ_i` the cyclic gaps between them (summing to
//! `T`), then the looped times are exactly `{0, 1, ..., Δθ_i - 1}` for each
//! gap. That gives closed forms
//!
//! ```text
//! mean  = Σ_i Δθ_i (Δθ_i - 1) / (2T)
//! Σ f(τ̂)/T = Σ_i Σ_{j<Δθ_i} f(j) / T        (any f)
//! ```
//!
//! computed here with integer accumulation so they agree bit-for-bit with
//! direct enumeration. [`RunDecomposition`] exposes that structure.
//!
//! Two diagnostics support error analysis. [`transit_time`] measures the
//! largest gap straddling a reference index — how long the series stays
//! outside a floor region around the window edge. [`discrepancy_bound`]
//! turns a transit time and the worst observed wrap-around overshoot into a
//! certified bound on `Σ_t |f(τ(t)) - f(τ̂(t))|^q` for polynomially growing
//! `f`, valid without seeing the uncensored future.

use crate::error::{Error, Result};
use crate::series::{ExtendedTime, TimeSeries};
use crate::threshold::{ScheduleKind, ThresholdSchedule};

/// Plain (uncorrected) hitting time from start `t`.
///
/// Scans forward only inside the observed window; returns `Infinite` when
/// the wait is censored by the window edge.
pub fn hitting_time(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    t: usize,
) -> Result<ExtendedTime> {
    let len = series.len();
    if t >= len {
        return Err(Error::TimeOutOfRange { index: t, len });
    }
    let values = series.values();
    for s in 0..len - t {
        if schedule.contains(s, values[t + s]) {
            return Ok(ExtendedTime::Finite(s));
        }
    }
    Ok(ExtendedTime::Infinite)
}

/// Censoring-corrected (looped) hitting time from start `t`.
///
/// Equals the plain hitting time whenever that one resolves; otherwise the
/// scan continues past the window edge with the series read again from
/// index 0 while the phase keeps advancing. `Infinite` means even the
/// wrapped scan found no hit within its exact budget of `2T - t - 1`
/// phases.
pub fn looped_hitting_time(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
    t: usize,
) -> Result<ExtendedTime> {
    let len = series.len();
    if t >= len {
        return Err(Error::TimeOutOfRange { index: t, len });
    }
    Ok(looped_scan(series.values(), schedule, t))
}

/// One forward scan of the looped definition; `t < values.len()` assumed.
fn looped_scan(values: &[f64], schedule: &ThresholdSchedule, t: usize) -> ExtendedTime {
    let len = values.len();
    for w in t..2 * len {
        let v = if w < len { values[w] } else { values[w - len] };
        if schedule.contains(w - t, v) {
            return ExtendedTime::Finite(w - t);
        }
    }
    ExtendedTime::Infinite
}

/// Plain hitting times for every start `t = 0..T`.
pub fn hitting_times(series: &TimeSeries, schedule: &ThresholdSchedule) -> Vec<ExtendedTime> {
    let values = series.values();
    let len = values.len();
    match &schedule.kind {
        ScheduleKind::Constant { level } => {
            let mut res = vec![ExtendedTime::Infinite; len];
            let mut next: Option<usize> = None;
            for w in (0..len).rev() {
                if values[w] > *level {
                    next = Some(w);
                }
                if let Some(n) = next {
                    res[w] = ExtendedTime::Finite(n - w);
                }
            }
            res
        }
        ScheduleKind::Periodic { levels } if levels.len() <= len => {
            let y = levels.len();
            let mut res = vec![ExtendedTime::Infinite; len];
            // Starts in the same residue class mod Y see the same phase at
            // every absolute position, so one backward sweep per class
            // resolves all of them.
            for g in 0..y {
                let mut next: Option<usize> = None;
                let mut phase = (len - 1 - g) % y;
                for w in (0..len).rev() {
                    if values[w] > levels[phase] {
                        next = Some(w);
                    }
                    if phase == 0 && w >= g {
                        if let Some(n) = next {
                            res[w] = ExtendedTime::Finite(n - w);
                        }
                    }
                    phase = if phase == 0 { y - 1 } else { phase - 1 };
                }
            }
            res
        }
        _ => (0..len)
            .map(|t| {
                for s in 0..len - t {
                    if schedule.contains(s, values[t + s]) {
                        return ExtendedTime::Finite(s);
                    }
                }
                ExtendedTime::Infinite
            })
            .collect(),
    }
}

/// Looped hitting times for every start `t = 0..T`.
///
/// Constant schedules resolve in one backward sweep; periodic interval
/// schedules in one sweep per phase residue class; arbitrary schedules fall
/// back to a direct scan per start.
pub fn looped_hitting_times(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
) -> Vec<ExtendedTime> {
    let values = series.values();
    let len = values.len();
    match &schedule.kind {
        ScheduleKind::Constant { level } => {
            let mut res = vec![ExtendedTime::Infinite; len];
            let mut next: Option<usize> = None;
            for w in (0..2 * len).rev() {
                let v = if w < len { values[w] } else { values[w - len] };
                if v > *level {
                    next = Some(w);
                }
                if w < len {
                    if let Some(n) = next {
                        res[w] = ExtendedTime::Finite(n - w);
                    }
                }
            }
            res
        }
        ScheduleKind::Periodic { levels } if levels.len() <= len => {
            let y = levels.len();
            let mut res = vec![ExtendedTime::Infinite; len];
            for g in 0..y {
                let mut next: Option<usize> = None;
                // Phase of absolute position w for a start in class g is
                // (w - g) mod Y; it is decremented alongside w.
                let mut phase = (2 * len - 1 - g) % y;
                for w in (0..2 * len).rev() {
                    let v = if w < len { values[w] } else { values[w - len] };
                    if v > levels[phase] {
                        next = Some(w);
                    }
                    if phase == 0 && w < len {
                        if let Some(n) = next {
                            res[w] = ExtendedTime::Finite(n - w);
                        }
                    }
                    phase = if phase == 0 { y - 1 } else { phase - 1 };
                }
            }
            res
        }
        _ => (0..len).map(|t| looped_scan(values, schedule, t)).collect(),
    }
}

/// The exceedance set of a constant threshold and the cyclic gaps between
/// consecutive exceedances.
///
/// `theta` holds the indices `t` with `V_t > level` in increasing order;
/// `gaps[i] = theta[i+1] - theta[i]` with the last gap wrapping around to
/// `T + theta[0]`. The gaps always sum to `T`, and the multiset of looped
/// hitting times is exactly `{0..gap}` for each gap — which is what the
/// closed-form moments below exploit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    theta: Vec<usize>,
    gaps: Vec<usize>,
    series_len: usize,
}

impl RunDecomposition {
    /// Decompose a series against a constant threshold.
    ///
    /// Errors with [`Error::NoExceedance`] when the series never exceeds
    /// `level`.
    pub fn from_series(series: &TimeSeries, level: f64) -> Result<Self> {
        let theta: Vec<usize> = series
            .values()
            .iter()
            .enumerate()
            .filter_map(|(t, &v)| (v > level).then_some(t))
            .collect();
        if theta.is_empty() {
            return Err(Error::NoExceedance);
        }
        let len = series.len();
        let mut gaps = Vec::with_capacity(theta.len());
        for i in 0..theta.len() {
            let next = if i + 1 < theta.len() {
                theta[i + 1]
            } else {
                len + theta[0]
            };
            gaps.push(next - theta[i]);
        }
        debug_assert_eq!(gaps.iter().sum::<usize>(), len, "cyclic gaps must sum to T");
        Ok(Self {
            theta,
            gaps,
            series_len: len,
        })
    }

    /// Exceedance indices in increasing order.
    pub fn exceedance_times(&self) -> &[usize] {
        &self.theta
    }

    /// Cyclic gaps between consecutive exceedances (they sum to `T`).
    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Window length `T`.
    pub fn series_len(&self) -> usize {
        self.series_len
    }

    /// Mean looped hitting time, `Σ_i Δθ_i (Δθ_i - 1) / (2T)`.
    ///
    /// The numerator is accumulated in integers and divided exactly once,
    /// so the result is bit-identical to averaging the enumerated looped
    /// times (both are correctly rounded quotients of the same rational).
    pub fn mean_hitting_time(&self) -> f64 {
        let acc: u128 = self
            .gaps
            .iter()
            .map(|&d| d as u128 * (d as u128 - 1))
            .sum();
        acc as f64 / (2 * self.series_len) as f64
    }

    /// Mean squared looped hitting time,
    /// `Σ_i Δθ_i (Δθ_i - 1)(2Δθ_i - 1) / (6T)`.
    pub fn mean_squared_hitting_time(&self) -> f64 {
        // Each term is Σ_{j<Δ} j², an integer, so the division by 6 is exact.
        let acc: u128 = self
            .gaps
            .iter()
            .map(|&d| {
                let d = d as u128;
                d * (d - 1) * (2 * d - 1) / 6
            })
            .sum();
        acc as f64 / self.series_len as f64
    }

    /// `Σ_t f(τ̂(t)) / T` for arbitrary `f`, via the gap structure.
    ///
    /// Work is `O(T)` in total: the inner ranges have combined length `T`.
    /// For integer-valued `f` with sums below 2^53 the result is exact and
    /// matches the closed forms above bit-for-bit.
    pub fn moment_sum(&self, mut f: impl FnMut(usize) -> f64) -> f64 {
        let mut acc = 0.0_f64;
        for &d in &self.gaps {
            let mut inner = 0.0_f64;
            for j in 0..d {
                inner += f(j);
            }
            acc += inner;
        }
        acc / self.series_len as f64
    }
}

/// Mean looped hitting time of the schedule, `Σ_t τ̂(t) / T`.
///
/// Returns `f64::INFINITY` when any looped time is `Infinite` (the mean of
/// a set containing `∞` is `∞`; never clamp it). Constant schedules use the
/// gap closed form; everything else enumerates.
pub fn mean_exceedance_estimate(series: &TimeSeries, schedule: &ThresholdSchedule) -> Result<f64> {
    if let Some(level) = schedule.constant_level() {
        return match RunDecomposition::from_series(series, level) {
            Ok(rd) => Ok(rd.mean_hitting_time()),
            Err(Error::NoExceedance) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        };
    }
    let times = looped_hitting_times(series, schedule);
    let mut acc: u128 = 0;
    for tau in &times {
        match tau {
            ExtendedTime::Finite(v) => acc += *v as u128,
            ExtendedTime::Infinite => return Ok(f64::INFINITY),
        }
    }
    Ok(acc as f64 / series.len() as f64)
}

/// `Σ_t f(τ̂(t)) / T` for a constant threshold, computed from the gap
/// structure in `O(T)` without enumerating the times.
///
/// Errors with [`Error::NoExceedance`] when the series never exceeds
/// `level` (every looped time is then `Infinite` and `f(∞)` is undefined).
pub fn run_length_moment(
    series: &TimeSeries,
    level: f64,
    f: impl FnMut(usize) -> f64,
) -> Result<f64> {
    Ok(RunDecomposition::from_series(series, level)?.moment_sum(f))
}

/// Discard-censored comparator: average the plain hitting times over the
/// longest prefix of starts that all resolve inside the window.
///
/// Returns `(mean, prefix_len)` where `prefix_len` is the number of starts
/// kept. This is the estimator the looped correction replaces; it is biased
/// toward short waits and wastes the window tail, but it is useful as a
/// baseline. Errors with [`Error::EmptyUncensoredPrefix`] when the very
/// first start is already censored.
pub fn discard_censored_estimate(
    series: &TimeSeries,
    schedule: &ThresholdSchedule,
) -> Result<(f64, usize)> {
    let times = hitting_times(series, schedule);
    let mut acc: u128 = 0;
    let mut kept = 0usize;
    for tau in &times {
        match tau {
            ExtendedTime::Finite(v) => {
                acc += *v as u128;
                kept += 1;
            }
            ExtendedTime::Infinite => break,
        }
    }
    if kept == 0 {
        return Err(Error::EmptyUncensoredPrefix);
    }
    Ok((acc as f64 / kept as f64, kept))
}

/// Transit time across a reference index: how long the series stays
/// outside the floor region `(floor_level, ∞)` around `t_ref`.
///
/// With `θ⁻` the last visit at or before `t_ref` and `θ⁺` the first visit
/// at or after it, the transit time is `max(θ⁺ - θ⁻ - 1, 0)` — zero when
/// the series is inside the region at `t_ref` itself. When either side has
/// no visit inside the window the transit time is censored; the error
/// carries the one-sided lower bound implied by the visible data.
pub fn transit_time(series: &TimeSeries, floor_level: f64, t_ref: usize) -> Result<usize> {
    let len = series.len();
    if t_ref >= len {
        return Err(Error::TimeOutOfRange { index: t_ref, len });
    }
    let values = series.values();
    let before = (0..=t_ref).rev().find(|&t| values[t] > floor_level);
    let after = (t_ref..len).find(|&t| values[t] > floor_level);
    match (before, after) {
        (Some(a), Some(b)) => Ok((b - a).saturating_sub(1)),
        // True θ⁺ is at least T, so the transit is at least T - θ⁻ - 1.
        (Some(a), None) => Err(Error::CensoredTransit {
            lower_bound: len - a - 1,
        }),
        // True θ⁻ is before the window, so the transit is at least θ⁺.
        (None, Some(b)) => Err(Error::CensoredTransit { lower_bound: b }),
        (None, None) => Err(Error::CensoredTransit { lower_bound: len }),
    }
}

/// Certified bound on the accumulated censoring discrepancy
/// `Σ_t |f(τ(t)) - f(τ̂(t))|^q` for `f` with `|f(x) - f(y)| ≤ C1 + C2·max(x,y)^p`.
///
/// `transit` is the transit time across the window edge and `lambda_bar`
/// the largest wrap-around overshoot among the censored starts (the number
/// of phases the looped scan ran past the window edge). The bound is
///
/// ```text
/// τ± · ( (C1 + C2·τ±^p)^q + (C1 + C2·(τ± + Λ̄)^p)^q )
/// ```
///
/// A zero transit time certifies zero discrepancy regardless of `Λ̄`
/// (every start then resolves identically with and without the loop), so
/// the prefactor wins even when `lambda_bar` is `Infinite`.
pub fn discrepancy_bound(
    transit: usize,
    lambda_bar: ExtendedTime,
    p: f64,
    q: f64,
    c1: f64,
    c2: f64,
) -> f64 {
    if transit == 0 {
        return 0.0;
    }
    let tau = transit as f64;
    let lam = lambda_bar.as_f64();
    tau * ((c1 + c2 * tau.powf(p)).powf(q) + (c1 + c2 * (tau + lam).powf(p)).powf(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::new(values.to_vec()).unwrap()
    }

    /// Straight-from-definition reference for the looped time: try the
    /// plain scan, then restart the series from index 0 with the phase
    /// clock still running (the two-branch form of the definition).
    fn oracle_looped(values: &[f64], schedule: &ThresholdSchedule, t: usize) -> ExtendedTime {
        let len = values.len();
        for s in 0..len - t {
            if schedule.contains(s, values[t + s]) {
                return ExtendedTime::Finite(s);
            }
        }
        for u in 0..len {
            if schedule.contains(len - t + u, values[u]) {
                return ExtendedTime::Finite(len - t + u);
            }
        }
        ExtendedTime::Infinite
    }

    #[test]
    fn plain_hitting_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        assert_eq!(hitting_time(&s, &sch, 0).unwrap(), ExtendedTime::Finite(0));
        assert_eq!(hitting_time(&s, &sch, 1).unwrap(), ExtendedTime::Finite(2));
        let s2 = series(&[1.0, 5.0, 1.0, 1.0]);
        assert_eq!(hitting_time(&s2, &sch, 2).unwrap(), ExtendedTime::Infinite);
        assert!(hitting_time(&s2, &sch, 4).is_err());
    }

    #[test]
    fn looped_hitting_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        let times: Vec<_> = (0..4)
            .map(|t| looped_hitting_time(&s, &sch, t).unwrap())
            .collect();
        assert_eq!(
            times,
            vec![
                ExtendedTime::Finite(0),
                ExtendedTime::Finite(2),
                ExtendedTime::Finite(1),
                ExtendedTime::Finite(0)
            ]
        );
        // Never any exceedance: even the wrapped scan reports Infinite.
        let s2 = series(&[1.0, 1.0]);
        assert_eq!(
            looped_hitting_time(&s2, &sch, 0).unwrap(),
            ExtendedTime::Infinite
        );
    }

    #[test]
    fn looped_equals_plain_on_uncensored_prefix() {
        // Starts at or before the last exceedance are never censored, so
        // the loop must change nothing there.
        let s = series(&[1.0, 5.0, 1.0, 5.0, 1.0, 1.0]);
        let sch = ThresholdSchedule::constant(4.0);
        for t in 0..=3 {
            assert_eq!(
                hitting_time(&s, &sch, t).unwrap(),
                looped_hitting_time(&s, &sch, t).unwrap()
            );
        }
    }

    #[test]
    fn run_decomposition_structure() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let rd = RunDecomposition::from_series(&s, 4.0).unwrap();
        assert_eq!(rd.exceedance_times(), &[0, 3]);
        assert_eq!(rd.gaps(), &[3, 1]);
        assert_eq!(rd.series_len(), 4);
        assert!(matches!(
            RunDecomposition::from_series(&series(&[1.0, 1.0]), 4.0),
            Err(Error::NoExceedance)
        ));
    }

    #[test]
    fn mean_estimate_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        let sch = ThresholdSchedule::constant(4.0);
        assert_eq!(mean_exceedance_estimate(&s, &sch).unwrap(), 0.75);
        let s2 = series(&[1.0, 1.0]);
        assert_eq!(
            mean_exceedance_estimate(&s2, &sch).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn run_length_moment_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        assert_eq!(run_length_moment(&s, 4.0, |j| j as f64).unwrap(), 0.75);
        assert_eq!(
            run_length_moment(&s, 4.0, |j| (j * j) as f64).unwrap(),
            1.25
        );
        let rd = RunDecomposition::from_series(&s, 4.0).unwrap();
        assert_eq!(rd.mean_squared_hitting_time(), 1.25);
    }

    #[test]
    fn discard_censored_example() {
        let s = series(&[1.0, 5.0, 1.0, 1.0]);
        let sch = ThresholdSchedule::constant(4.0);
        let (mean, kept) = discard_censored_estimate(&s, &sch).unwrap();
        // Plain times are {1, 0, inf, inf}: the uncensored prefix is {1, 0}.
        assert_eq!(kept, 2);
        assert_eq!(mean, 0.5);
        let s2 = series(&[1.0, 1.0, 5.0]);
        // t = 0 resolves (s=2), t = 1 resolves, t = 2 resolves at 0: kept=3.
        let (_, kept2) = discard_censored_estimate(&s2, &sch).unwrap();
        assert_eq!(kept2, 3);
        let s3 = series(&[1.0, 1.0]);
        assert!(matches!(
            discard_censored_estimate(&s3, &sch),
            Err(Error::EmptyUncensoredPrefix)
        ));
    }

    #[test]
    fn transit_time_examples() {
        let s = series(&[5.0, 1.0, 1.0, 5.0]);
        assert_eq!(transit_time(&s, 4.0, 2).unwrap(), 2);
        // Inside the region at the reference: zero transit.
        assert_eq!(transit_time(&s, 4.0, 0).unwrap(), 0);
        // Censored on the right: [5,1,1,1] from t_ref=1 has θ⁻=0 and no θ⁺.
        let s2 = series(&[5.0, 1.0, 1.0, 1.0]);
        match transit_time(&s2, 4.0, 1) {
            Err(Error::CensoredTransit { lower_bound }) => assert_eq!(lower_bound, 3),
            other => panic!("expected censored transit, got {other:?}"),
        }
        // Censored on the left.
        let s3 = series(&[1.0, 1.0, 5.0, 1.0]);
        match transit_time(&s3, 4.0, 1) {
            Err(Error::CensoredTransit { lower_bound }) => assert_eq!(lower_bound, 2),
            other => panic!("expected censored transit, got {other:?}"),
        }
        // No visit at all.
        let s4 = series(&[1.0, 1.0]);
        match transit_time(&s4, 4.0, 0) {
            Err(Error::CensoredTransit { lower_bound }) => assert_eq!(lower_bound, 2),
            other => panic!("expected censored transit, got {other:?}"),
        }
    }

    #[test]
    fn discrepancy_bound_examples() {
        assert_eq!(
            discrepancy_bound(2, ExtendedTime::Finite(1), 1.0, 1.0, 0.0, 1.0),
            10.0
        );
        // Constant f: C2 = 0 makes the overshoot irrelevant.
        assert_eq!(
            discrepancy_bound(3, ExtendedTime::Infinite, 0.0, 1.0, 1.0, 0.0),
            6.0
        );
        // Zero transit certifies zero discrepancy even with infinite overshoot.
        assert_eq!(
            discrepancy_bound(0, ExtendedTime::Infinite, 2.0, 2.0, 1.0, 1.0),
            0.0
        );
    }

    #[test]
    fn periodic_fast_path_matches_oracle() {
        let values = [3.0, 0.5, 2.5, 0.1, 4.0, 0.2, 2.0, 3.5, 0.9, 2.2, 1.5];
        let s = series(&values);
        let levels = vec![1.0, 3.0, 2.0];
        let sch = ThresholdSchedule::periodic(levels.clone()).unwrap();
        let fast = looped_hitting_times(&s, &sch);
        for t in 0..values.len() {
            assert_eq!(fast[t], oracle_looped(&values, &sch, t), "start {t}");
        }
        // And the plain times against a direct scan.
        let plain = hitting_times(&s, &sch);
        for t in 0..values.len() {
            let mut expect = ExtendedTime::Infinite;
            for st in 0..values.len() - t {
                if sch.contains(st, values[t + st]) {
                    expect = ExtendedTime::Finite(st);
                    break;
                }
            }
            assert_eq!(plain[t], expect, "plain start {t}");
        }
    }

    proptest! {
        /// Fast paths agree with the two-branch definition on random input.
        #[test]
        fn looped_times_match_definition(
            values in prop::collection::vec(0.0_f64..10.0, 1..60),
            level in 0.0_f64..10.0,
            period in 1_usize..8,
        ) {
            let s = series(&values);
            let constant = ThresholdSchedule::constant(level);
            let all = looped_hitting_times(&s, &constant);
            for t in 0..values.len() {
                prop_assert_eq!(all[t], oracle_looped(&values, &constant, t));
                prop_assert_eq!(all[t], looped_hitting_time(&s, &constant, t).unwrap());
            }
            let levels: Vec<f64> = (0..period).map(|i| level * (0.5 + 0.2 * i as f64)).collect();
            let periodic = ThresholdSchedule::periodic(levels).unwrap();
            let all_p = looped_hitting_times(&s, &periodic);
            for t in 0..values.len() {
                prop_assert_eq!(all_p[t], oracle_looped(&values, &periodic, t));
            }
        }

        /// Enlarging every target region can only shorten the wait.
        #[test]
        fn monotone_in_region(
            values in prop::collection::vec(0.0_f64..10.0, 1..50),
            lo in 0.0_f64..5.0,
            bump in 0.0_f64..5.0,
        ) {
            let s = series(&values);
            let big = ThresholdSchedule::constant(lo);
            let small = ThresholdSchedule::constant(lo + bump);
            let t_big = looped_hitting_times(&s, &big);
            let t_small = looped_hitting_times(&s, &small);
            for t in 0..values.len() {
                prop_assert!(t_big[t] <= t_small[t]);
            }
        }

        /// The loop never changes an uncensored start, and the gap closed
        /// form reproduces the enumerated mean bit-for-bit.
        #[test]
        fn closed_form_mean_matches_enumeration(
            values in prop::collection::vec(0.0_f64..10.0, 1..80),
            level in 0.0_f64..10.0,
        ) {
            let s = series(&values);
            let sch = ThresholdSchedule::constant(level);
            let looped = looped_hitting_times(&s, &sch);
            let plain = hitting_times(&s, &sch);
            for t in 0..values.len() {
                if plain[t].is_finite() {
                    prop_assert_eq!(plain[t], looped[t]);
                }
            }
            let mean = mean_exceedance_estimate(&s, &sch).unwrap();
            if looped.iter().all(|t| t.is_finite()) {
                let acc: u64 = looped.iter().map(|t| t.finite().unwrap() as u64).sum();
                let enumerated = (2 * acc) as f64 / (2 * values.len()) as f64;
                prop_assert_eq!(mean.to_bits(), enumerated.to_bits());
            } else {
                prop_assert_eq!(mean, f64::INFINITY);
            }
        }
    }
}
