//! Non-stationary (cyclostationary) series: time transforms, seasonal
//! marginals, and the reduction of a moving-target problem to a stationary
//! one.
//!
//! The waiting time until a target region is hit is invariant under a
//! time-indexed family of strictly increasing maps `G_t`: if every value is
//! pushed through `Ṽ_t = G_t(V_t)` and every region through
//! `α_s = G_{u+s}(β_s)` (for starts at time `u`), the hitting times of the
//! transformed problem equal those of the original exactly — not just in
//! distribution. Two transforms matter in practice:
//!
//! * **periodic rescaling** `G_t(v) = v / S_{t mod Y}` removes a known
//!   seasonal amplitude, and
//! * **marginal uniformization** `G_t(v) = F_{t mod Y}(v)` maps a series
//!   with per-phase marginals `F_t` onto uniform margins, turning a constant
//!   threshold `b` into the periodic schedule `α_s = F_s(b)`.
//!
//! [`nonstat_mean_exceedance`] packages the second reduction end to end;
//! [`fit_seasonal_weibull`] estimates the per-phase marginals from data by
//! smoothed method of moments.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};

use crate::dist::Weibull;
use crate::error::{Error, Result};
use crate::numeric::bisection;
use crate::series::TimeSeries;
use crate::threshold::{ScheduleKind, ThresholdSchedule};
use crate::uncertainty::{estimate_return_time, EstimateOptions, ExceedanceEstimate};

// ---- seasonal marginal model ----

/// Periodic family of Weibull marginals: at time `t` the marginal is
/// `Weibull(lambda[t mod Y], k[t mod Y])` with period `Y`.
///
/// Serializes to/from the JSON document
/// `{"period": Y, "lambda": [Y reals], "k": [Y reals]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMarginalModel", into = "RawMarginalModel")]
pub struct MarginalModel {
    period: usize,
    lambda: Vec<f64>,
    k: Vec<f64>,
}

/// Wire shape of [`MarginalModel`]; validated on the way in.
#[derive(Serialize, Deserialize)]
struct RawMarginalModel {
    period: usize,
    lambda: Vec<f64>,
    k: Vec<f64>,
}

impl TryFrom<RawMarginalModel> for MarginalModel {
    type Error = Error;

    fn try_from(raw: RawMarginalModel) -> Result<Self> {
        if raw.period != raw.lambda.len() || raw.period != raw.k.len() {
            return Err(Error::Config(format!(
                "marginal model period {} does not match table lengths (lambda: {}, k: {})",
                raw.period,
                raw.lambda.len(),
                raw.k.len()
            )));
        }
        MarginalModel::new(raw.lambda, raw.k)
    }
}

impl From<MarginalModel> for RawMarginalModel {
    fn from(m: MarginalModel) -> Self {
        RawMarginalModel {
            period: m.period,
            lambda: m.lambda,
            k: m.k,
        }
    }
}

impl MarginalModel {
    /// Build a periodic marginal model from per-phase scale and shape
    /// tables. The period is the (common, non-zero) table length; every
    /// entry must be a valid Weibull parameter (positive and finite).
    pub fn new(lambda: Vec<f64>, k: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() || lambda.len() != k.len() {
            return Err(Error::Config(format!(
                "marginal model needs equal-length non-empty parameter tables, got lambda: {}, k: {}",
                lambda.len(),
                k.len()
            )));
        }
        for (g, (&l, &s)) in lambda.iter().zip(&k).enumerate() {
            // Constructing the phase distribution validates both parameters.
            Weibull::new(l, s).map_err(|e| {
                Error::Config(format!("marginal model phase {g}: {e}"))
            })?;
        }
        Ok(Self {
            period: lambda.len(),
            lambda,
            k,
        })
    }

    /// Time-constant model: a single Weibull marginal (period 1).
    pub fn constant(scale: f64, shape: f64) -> Result<Self> {
        Self::new(vec![scale], vec![shape])
    }

    /// Seasonal period `Y`.
    pub fn period(&self) -> usize {
        self.period
    }

    /// Per-phase scale table (length `Y`).
    pub fn scales(&self) -> &[f64] {
        &self.lambda
    }

    /// Per-phase shape table (length `Y`).
    pub fn shapes(&self) -> &[f64] {
        &self.k
    }

    /// Scale parameter in force at time `t` (phase `t mod Y`).
    pub fn scale_at(&self, t: usize) -> f64 {
        self.lambda[t % self.period]
    }

    /// Shape parameter in force at time `t`.
    pub fn shape_at(&self, t: usize) -> f64 {
        self.k[t % self.period]
    }

    /// The marginal distribution in force at time `t`.
    pub fn distribution_at(&self, t: usize) -> Weibull {
        // Parameters were validated in the constructor.
        Weibull::new(self.scale_at(t), self.shape_at(t))
            .expect("marginal model parameters validated at construction")
    }

    /// Marginal CDF at time `t`: `F_t(x)`.
    pub fn cdf(&self, t: usize, x: f64) -> f64 {
        self.distribution_at(t).cdf(x)
    }

    /// Marginal quantile at time `t`: `F_t^{-1}(p)` for `p ∈ [0, 1)`.
    pub fn quantile(&self, t: usize, p: f64) -> f64 {
        self.distribution_at(t).quantile(p)
    }

    /// Serialize to the canonical JSON document.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parse and validate the canonical JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

// ---- time transforms ----

/// Time-indexed pointwise map applied by [`TimeTransform::Custom`].
pub type PointwiseFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// A time-indexed family of pointwise maps `G_t: ℝ → ℝ`.
///
/// Strictly increasing transforms preserve hitting times exactly when the
/// target regions are pushed through [`transformed_threshold`]; that is what
/// makes deseasonalization and marginal uniformization "free" — no
/// approximation is introduced at any series length.
#[derive(Clone)]
pub enum TimeTransform {
    /// `G_t(v) = v` — leaves series and schedules untouched.
    Identity,
    /// `G_t(v) = v / scales[t mod Y]`: removes a known periodic amplitude.
    /// All scales must be positive (so the map is strictly increasing).
    PeriodicScale { scales: Arc<Vec<f64>> },
    /// `G_t(v) = F_{t mod Y}(v)`: per-phase probability integral transform
    /// onto uniform margins.
    MarginalUniform { marginal: Arc<MarginalModel> },
    /// Arbitrary user map `G_t(v) = forward(t, v)`. Set `monotone` only if
    /// every `G_t` is strictly increasing in `v`; interval schedules can be
    /// transformed only in that case.
    Custom { forward: PointwiseFn, monotone: bool },
}

impl TimeTransform {
    /// The identity transform.
    pub fn identity() -> Self {
        TimeTransform::Identity
    }

    /// Periodic rescaling `G_t(v) = v / scales[t mod Y]`.
    ///
    /// Errors if the table is empty or any scale is not a positive finite
    /// number.
    pub fn periodic_scale(scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::Config("periodic scale table must be non-empty".into()));
        }
        if scales.iter().any(|s| !s.is_finite() || *s <= 0.0) {
            return Err(Error::Config(
                "periodic scales must be positive and finite".into(),
            ));
        }
        Ok(TimeTransform::PeriodicScale {
            scales: Arc::new(scales),
        })
    }

    /// Per-phase probability integral transform under `marginal`.
    pub fn marginal_uniform(marginal: MarginalModel) -> Self {
        TimeTransform::MarginalUniform {
            marginal: Arc::new(marginal),
        }
    }

    /// Arbitrary pointwise map; declare `monotone` truthfully (see type
    /// docs).
    pub fn custom(
        forward: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
        monotone: bool,
    ) -> Self {
        TimeTransform::Custom {
            forward: Arc::new(forward),
            monotone,
        }
    }

    /// Apply `G_t` to a single value.
    pub fn forward(&self, t: usize, v: f64) -> f64 {
        match self {
            TimeTransform::Identity => v,
            TimeTransform::PeriodicScale { scales } => v / scales[t % scales.len()],
            TimeTransform::MarginalUniform { marginal } => marginal.cdf(t, v),
            TimeTransform::Custom { forward, .. } => forward(t, v),
        }
    }

    /// Whether every `G_t` is (declared) strictly increasing in `v`.
    fn is_monotone(&self) -> bool {
        match self {
            TimeTransform::Custom { monotone, .. } => *monotone,
            _ => true,
        }
    }
}

impl std::fmt::Debug for TimeTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TimeTransform::Identity => write!(f, "TimeTransform::Identity"),
            TimeTransform::PeriodicScale { scales } => {
                write!(f, "TimeTransform::PeriodicScale(Y={})", scales.len())
            }
            TimeTransform::MarginalUniform { marginal } => {
                write!(f, "TimeTransform::MarginalUniform(Y={})", marginal.period())
            }
            TimeTransform::Custom { monotone, .. } => {
                write!(f, "TimeTransform::Custom(monotone={monotone})")
            }
        }
    }
}

/// Apply a transform pointwise: `Ṽ_t = G_t(V_t)`.
///
/// The sample step is preserved. Errors with the offending index if any
/// output is NaN or infinite (e.g. uniformizing a value outside the marginal
/// support).
pub fn transform_series(series: &TimeSeries, transform: &TimeTransform) -> Result<TimeSeries> {
    let mut out = Vec::with_capacity(series.len());
    for (t, &v) in series.values().iter().enumerate() {
        let w = transform.forward(t, v);
        if !w.is_finite() {
            return Err(Error::Data(format!(
                "transform produced non-finite value {w} at index {t} (input {v})"
            )));
        }
        out.push(w);
    }
    TimeSeries::with_sample_step(out, series.sample_step())
}

/// Push a schedule through a transform: `α_s = G_{u+s}(β_s)` for starts at
/// time `u`.
///
/// For interval schedules and a strictly increasing transform the image of
/// `(b_s, ∞)` is again an upper interval, `(G_{u+s}(b_s), ∞)`, so the result
/// stays in interval form (periodic whenever both inputs are periodic and
/// the combined period is small enough to tabulate). A non-monotone custom
/// transform cannot map intervals to intervals and is rejected, as is a
/// general-region schedule (its membership predicate cannot be pushed
/// forward without an inverse map).
///
/// Any floor attached to the input is dropped: a time-constant floor does
/// not stay constant under a time-varying transform.
pub fn transformed_threshold(
    schedule: &ThresholdSchedule,
    transform: &TimeTransform,
    u: usize,
) -> Result<ThresholdSchedule> {
    if let TimeTransform::Identity = transform {
        let mut out = schedule.clone();
        out = match schedule.floor() {
            Some(fl) => out.with_floor(fl),
            None => out,
        };
        return Ok(out);
    }
    if matches!(schedule.kind, ScheduleKind::General { .. }) {
        return Err(Error::Config(
            "cannot transform a general-region schedule: the membership predicate has no \
             pushforward without an inverse map"
                .into(),
        ));
    }
    if !transform.is_monotone() {
        return Err(Error::Config(
            "cannot transform an interval schedule through a non-monotone map: the image of an \
             interval is not an interval"
                .into(),
        ));
    }

    // Largest combined period worth tabulating eagerly; beyond this, fall
    // back to a lazy level function.
    const MAX_TABLE: usize = 1 << 20;

    let transform_period = match transform {
        TimeTransform::PeriodicScale { scales } => Some(scales.len()),
        TimeTransform::MarginalUniform { marginal } => Some(marginal.period()),
        _ => None,
    };

    match (&schedule.kind, transform_period) {
        (ScheduleKind::Constant { level }, Some(y)) => {
            let b = *level;
            let levels: Vec<f64> = (0..y).map(|s| transform.forward(u + s, b)).collect();
            ThresholdSchedule::periodic(levels)
        }
        (ScheduleKind::Periodic { levels }, Some(y)) => {
            let combined = lcm(levels.len(), y);
            if combined <= MAX_TABLE {
                let table: Vec<f64> = (0..combined)
                    .map(|s| transform.forward(u + s, levels[s % levels.len()]))
                    .collect();
                ThresholdSchedule::periodic(table)
            } else {
                let levels = Arc::clone(levels);
                let tr = transform.clone();
                Ok(ThresholdSchedule::varying(move |s| {
                    tr.forward(u + s, levels[s % levels.len()])
                }))
            }
        }
        _ => {
            // Constant/periodic/varying schedule under a custom monotone
            // transform, or a varying schedule under any transform: lazy
            // level function.
            let sch = schedule.clone();
            let tr = transform.clone();
            Ok(ThresholdSchedule::varying(move |s| {
                let b = sch
                    .level_at(s)
                    .expect("interval schedule checked above");
                tr.forward(u + s, b)
            }))
        }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

// ---- seasonal estimation ----

/// Reduce a seasonal exceedance problem to uniform margins: returns the
/// transformed series `U_t = F_t(V_t)` together with the periodic schedule
/// `α_s = (F_s(b), ∞)` equivalent to the constant threshold `b` on the
/// original series.
pub fn uniform_reduction(
    series: &TimeSeries,
    marginal: &MarginalModel,
    b: f64,
) -> Result<(TimeSeries, ThresholdSchedule)> {
    let u = transform_series(
        series,
        &TimeTransform::MarginalUniform {
            marginal: Arc::new(marginal.clone()),
        },
    )?;
    let schedule = transformed_threshold(
        &ThresholdSchedule::constant(b),
        &TimeTransform::MarginalUniform {
            marginal: Arc::new(marginal.clone()),
        },
        0,
    )?;
    Ok((u, schedule))
}

/// Mean exceedance time of the constant threshold `b` on a seasonal series,
/// with a CLT confidence interval at level `gamma`.
///
/// Uniformizes through the per-phase marginals and runs the standard
/// censoring-corrected estimator on the transformed pair; the reduction is
/// exact, so the point estimate equals what a direct moving-threshold scan
/// would produce. The series length should be an integer multiple of the
/// marginal period for the phase alignment to wrap cleanly; other lengths
/// are accepted but mix phases at the seam.
///
/// Errors if any start is censored past the scan budget
/// ([`Error::InfiniteMoment`]) — use the survival curve or a conditional
/// summary in that regime.
pub fn nonstat_mean_exceedance(
    series: &TimeSeries,
    marginal: &MarginalModel,
    b: f64,
    gamma: f64,
) -> Result<ExceedanceEstimate> {
    let (u, schedule) = uniform_reduction(series, marginal, b)?;
    let options = EstimateOptions {
        gamma,
        ..EstimateOptions::default()
    };
    estimate_return_time(&u, &schedule, &options)
}

// ---- seasonal marginal fitting ----

/// Fit per-phase Weibull marginals to a seasonal series by smoothed method
/// of moments.
///
/// The first two moments `E[V_t]`, `E[V_t²]` are estimated per phase
/// `t mod period`, smoothed circularly with a local-quadratic kernel
/// smoother of half-width `bandwidth` phases (`bandwidth < 2` keeps the raw
/// per-phase moments), and inverted: the shape `k_t` solves
/// `Γ(1+1/k)² / Γ(1+2/k) = m1²/m2` by bisection on `[0.1, 50]` and the
/// scale is `λ_t = m1 / Γ(1+1/k_t)`.
///
/// Requirements: `period ≥ 1`, at least one observation in every phase
/// (lengths of at least twice the period are recommended so each phase is
/// seen more than once), non-negative data with a positive mean in every
/// phase. A phase whose smoothed moment ratio falls outside `(0, 1)` — or
/// outside the ratio range reachable for shapes in `[0.1, 50]` — cannot come
/// from a Weibull and yields [`Error::Numeric`].
pub fn fit_seasonal_weibull(
    series: &TimeSeries,
    period: usize,
    bandwidth: usize,
) -> Result<MarginalModel> {
    if period == 0 {
        return Err(Error::Config("seasonal period must be at least 1".into()));
    }
    if series.len() < period {
        return Err(Error::Data(format!(
            "series length {} shorter than the seasonal period {period}: some phases have no data",
            series.len()
        )));
    }
    if let Some(t) = series.values().iter().position(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Data(format!(
            "seasonal fit needs non-negative finite data; offending value {} at index {t}",
            series[t]
        )));
    }

    // Raw per-phase moments.
    let mut m1 = vec![0.0_f64; period];
    let mut m2 = vec![0.0_f64; period];
    let mut count = vec![0usize; period];
    for (t, &v) in series.values().iter().enumerate() {
        let g = t % period;
        m1[g] += v;
        m2[g] += v * v;
        count[g] += 1;
    }
    for g in 0..period {
        // count[g] >= 1 because series.len() >= period.
        m1[g] /= count[g] as f64;
        m2[g] /= count[g] as f64;
    }

    let (m1, m2) = if bandwidth >= 2 && period > 2 * bandwidth {
        (
            circular_local_quadratic(&m1, bandwidth),
            circular_local_quadratic(&m2, bandwidth),
        )
    } else {
        (m1, m2)
    };

    let mut lambda = Vec::with_capacity(period);
    let mut k = Vec::with_capacity(period);
    for g in 0..period {
        if m1[g] <= 0.0 {
            return Err(Error::Data(format!(
                "phase {g} has non-positive mean {}: cannot fit a Weibull scale",
                m1[g]
            )));
        }
        let ratio = m1[g] * m1[g] / m2[g];
        let shape = solve_shape_from_moment_ratio(ratio).map_err(|e| match e {
            Error::Numeric(msg) => Error::Numeric(format!("phase {g}: {msg}")),
            other => other,
        })?;
        lambda.push(m1[g] / gamma(1.0 + 1.0 / shape));
        k.push(shape);
    }
    MarginalModel::new(lambda, k)
}

/// Weibull moment ratio `m1²/m2 = Γ(1+1/k)² / Γ(1+2/k)` as a function of
/// the shape `k`; strictly increasing from 0 (k → 0) toward 1 (k → ∞).
fn weibull_moment_ratio(shape: f64) -> f64 {
    (2.0 * ln_gamma(1.0 + 1.0 / shape) - ln_gamma(1.0 + 2.0 / shape)).exp()
}

/// Invert the Weibull moment ratio for the shape on `[0.1, 50]`.
fn solve_shape_from_moment_ratio(ratio: f64) -> Result<f64> {
    const LO: f64 = 0.1;
    const HI: f64 = 50.0;
    if !(0.0..1.0).contains(&ratio) || ratio <= 0.0 {
        return Err(Error::Numeric(format!(
            "moment ratio m1²/m2 = {ratio} is outside (0, 1): not achievable by any Weibull"
        )));
    }
    let (rlo, rhi) = (weibull_moment_ratio(LO), weibull_moment_ratio(HI));
    if ratio < rlo || ratio > rhi {
        return Err(Error::Numeric(format!(
            "moment ratio {ratio} needs a shape outside [{LO}, {HI}] (reachable range [{rlo:.3e}, {rhi:.6}])"
        )));
    }
    bisection(|s| weibull_moment_ratio(s) - ratio, LO, HI, 1e-10, 200)
}

/// Circular local-quadratic smoother with tricube weights over a window of
/// `±h` phases. Fits `y ≈ β0 + β1 d + β2 d²` in the signed circular offset
/// `d` by weighted least squares and returns the intercept at every phase.
fn circular_local_quadratic(y: &[f64], h: usize) -> Vec<f64> {
    let n = y.len();
    debug_assert!(h >= 2 && 2 * h < n);
    let hw = (h + 1) as f64;
    // Symmetric window and even weights make the odd moment sums vanish, so
    // the intercept only needs S0, S2, S4 and the data sums T0, T2.
    let mut s0 = 0.0;
    let mut s2 = 0.0;
    let mut s4 = 0.0;
    let weights: Vec<f64> = (-(h as isize)..=h as isize)
        .map(|d| {
            let u = (d.unsigned_abs() as f64) / hw;
            let w = (1.0 - u * u * u).powi(3);
            let d2 = (d * d) as f64;
            s0 += w;
            s2 += w * d2;
            s4 += w * d2 * d2;
            w
        })
        .collect();
    let denom = s0 * s4 - s2 * s2;
    (0..n)
        .map(|g| {
            let mut t0 = 0.0;
            let mut t2 = 0.0;
            for (j, w) in weights.iter().enumerate() {
                let d = j as isize - h as isize;
                let idx = (g as isize + d).rem_euclid(n as isize) as usize;
                t0 += w * y[idx];
                t2 += w * ((d * d) as f64) * y[idx];
            }
            (t0 * s4 - t2 * s2) / denom
        })
        .collect()
}

// ---- tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitting::{hitting_time, mean_exceedance_estimate};
    use crate::rng::SeededRng;
    use crate::uncertainty::confidence_interval;
    use proptest::prelude::*;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new(values).unwrap()
    }

    #[test]
    fn identity_transform_is_a_no_op() {
        let v = series(vec![1.0, -2.5, 7.0]);
        let out = transform_series(&v, &TimeTransform::identity()).unwrap();
        assert_eq!(out.values(), v.values());
    }

    #[test]
    fn periodic_scale_deseasonalizes_exactly() {
        let scales = vec![0.5, 1.0, 2.0];
        let z: Vec<f64> = vec![1.0, -0.3, 2.2, 0.7, 0.0, -1.1, 3.0];
        let v: Vec<f64> = z
            .iter()
            .enumerate()
            .map(|(t, &x)| x * scales[t % 3])
            .collect();
        let tr = TimeTransform::periodic_scale(scales).unwrap();
        let out = transform_series(&series(v), &tr).unwrap();
        for (a, b) in out.values().iter().zip(&z) {
            assert!((a - b).abs() <= 1e-15 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn periodic_scale_rejects_bad_tables() {
        assert!(TimeTransform::periodic_scale(vec![]).is_err());
        assert!(TimeTransform::periodic_scale(vec![1.0, 0.0]).is_err());
        assert!(TimeTransform::periodic_scale(vec![1.0, -2.0]).is_err());
        assert!(TimeTransform::periodic_scale(vec![f64::NAN]).is_err());
    }

    #[test]
    fn marginal_uniform_matches_exponential_cdf() {
        let marginal = MarginalModel::constant(1.0, 1.0).unwrap();
        let tr = TimeTransform::marginal_uniform(marginal);
        for v in [0.0_f64, 0.2, 1.0, 3.7] {
            let expect = 1.0 - (-v).exp();
            assert!((tr.forward(5, v) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn transform_series_reports_offending_index() {
        let tr = TimeTransform::custom(|_, v| v.ln(), true);
        let err = transform_series(&series(vec![1.0, 0.0, 2.0]), &tr).unwrap_err();
        match err {
            Error::Data(msg) => assert!(msg.contains("index 1"), "got: {msg}"),
            other => panic!("expected Data error, got {other:?}"),
        }
    }

    #[test]
    fn transformed_threshold_rejects_unsupported_forms() {
        let general = ThresholdSchedule::general(|_, v| v > 1.0);
        let scale = TimeTransform::periodic_scale(vec![2.0]).unwrap();
        assert!(transformed_threshold(&general, &scale, 0).is_err());

        let constant = ThresholdSchedule::constant(1.0);
        let wiggly = TimeTransform::custom(|_, v| v * v, false);
        assert!(transformed_threshold(&constant, &wiggly, 0).is_err());
    }

    #[test]
    fn transformed_constant_threshold_is_periodic() {
        let scales = vec![0.5, 1.0, 4.0];
        let tr = TimeTransform::periodic_scale(scales).unwrap();
        let sch = transformed_threshold(&ThresholdSchedule::constant(2.0), &tr, 0).unwrap();
        let levels = sch.periodic_levels().expect("periodic form expected");
        assert_eq!(levels, &[4.0, 2.0, 0.5]);

        // Start offset u shifts which phase each level lands on.
        let tr = TimeTransform::periodic_scale(vec![0.5, 1.0, 4.0]).unwrap();
        let sch = transformed_threshold(&ThresholdSchedule::constant(2.0), &tr, 1).unwrap();
        assert_eq!(sch.periodic_levels().unwrap(), &[2.0, 0.5, 4.0]);
    }

    #[test]
    fn transformed_periodic_threshold_combines_periods() {
        let tr = TimeTransform::periodic_scale(vec![1.0, 2.0]).unwrap();
        let base = ThresholdSchedule::periodic(vec![3.0, 6.0, 12.0]).unwrap();
        let sch = transformed_threshold(&base, &tr, 0).unwrap();
        let levels = sch.periodic_levels().expect("periodic form expected");
        assert_eq!(levels.len(), 6);
        for (s, &l) in levels.iter().enumerate() {
            let b = [3.0, 6.0, 12.0][s % 3];
            let scale = [1.0, 2.0][s % 2];
            assert_eq!(l, b / scale);
        }
    }

    // Hitting times are invariant under strictly increasing time-indexed
    // maps when the schedule is pushed through with the start offset.
    proptest! {
        #[test]
        fn hitting_times_invariant_under_monotone_transform(
            values in proptest::collection::vec(-3.0..3.0f64, 2..12),
            slopes in proptest::collection::vec(0.5..2.0f64, 12),
            shifts in proptest::collection::vec(-1.0..1.0f64, 12),
            b in -2.0..2.0f64,
        ) {
            let v = TimeSeries::new(values.clone()).unwrap();
            let beta = ThresholdSchedule::constant(b);
            let slopes2 = slopes.clone();
            let shifts2 = shifts.clone();
            let tr = TimeTransform::custom(
                move |t, x| slopes2[t % 12] * x + shifts2[t % 12],
                true,
            );
            let vt = transform_series(&v, &tr).unwrap();
            for t in 0..values.len() {
                let alpha = transformed_threshold(&beta, &tr, t).unwrap();
                prop_assert_eq!(
                    hitting_time(&v, &beta, t).unwrap(),
                    hitting_time(&vt, &alpha, t).unwrap()
                );
            }
        }
    }

    #[test]
    fn mean_estimate_invariant_under_time_constant_monotone_map() {
        let mut rng = SeededRng::new(31);
        let values: Vec<f64> = (0..400).map(|_| rng.standard_normal()).collect();
        let v = series(values.clone());
        let b = 1.4_f64;

        let mapped = series(values.iter().map(|&x| x.powi(3) + 2.0 * x).collect());
        let mapped_b = b.powi(3) + 2.0 * b;

        let orig = mean_exceedance_estimate(&v, &ThresholdSchedule::constant(b)).unwrap();
        let push = mean_exceedance_estimate(&mapped, &ThresholdSchedule::constant(mapped_b))
            .unwrap();
        // The exceedance pattern is identical, so the estimates agree to the
        // last bit.
        assert_eq!(orig.to_bits(), push.to_bits());
    }

    #[test]
    fn constant_marginal_reduction_matches_raw_estimate_exactly() {
        let mut rng = SeededRng::new(77);
        let marginal = MarginalModel::constant(2.0, 1.5).unwrap();
        let w = Weibull::new(2.0, 1.5).unwrap();
        let values: Vec<f64> = (0..600).map(|_| w.sample(&mut rng)).collect();
        let v = series(values);
        let b = 3.5;

        let raw = confidence_interval(
            &v,
            &ThresholdSchedule::constant(b),
            0.95,
            crate::uncertainty::default_max_lag(v.len()),
        )
        .unwrap();
        let reduced = nonstat_mean_exceedance(&v, &marginal, b, 0.95).unwrap();
        assert_eq!(raw.point.to_bits(), reduced.point.to_bits());
        assert_eq!(raw.std_error.to_bits(), reduced.std_error.to_bits());
    }

    #[test]
    fn marginal_model_json_round_trip() {
        let m = MarginalModel::new(vec![1.5, 2.0, 2.5], vec![1.0, 2.0, 3.0]).unwrap();
        let text = m.to_json().unwrap();
        assert!(text.contains("\"period\": 3"));
        let back = MarginalModel::from_json(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn marginal_model_json_rejects_mismatched_period() {
        let err = MarginalModel::from_json(
            r#"{"period": 2, "lambda": [1.0, 2.0, 3.0], "k": [1.0, 1.0, 1.0]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Json(_) | Error::Config(_)));
    }

    #[test]
    fn marginal_quantile_inverts_cdf() {
        let m = MarginalModel::new(vec![11.05, 9.0], vec![2.19, 1.7]).unwrap();
        for t in 0..4 {
            for p in [0.01, 0.3, 0.5, 0.9, 0.999] {
                let x = m.quantile(t, p);
                assert!((m.cdf(t, x) - p).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn seasonal_fit_recovers_constant_weibull() {
        let mut rng = SeededRng::new(1001);
        let w = Weibull::new(11.05, 2.19).unwrap();
        let values: Vec<f64> = (0..100_000).map(|_| w.sample(&mut rng)).collect();
        let fit = fit_seasonal_weibull(&series(values), 1, 0).unwrap();
        assert!((fit.scale_at(0) / 11.05 - 1.0).abs() < 0.02, "scale {}", fit.scale_at(0));
        assert!((fit.shape_at(0) / 2.19 - 1.0).abs() < 0.02, "shape {}", fit.shape_at(0));
    }

    #[test]
    fn seasonal_fit_recovers_periodic_truth() {
        let y = 50;
        let reps = 200;
        let shape_true = 2.0;
        let mut rng = SeededRng::new(4242);
        let base = Weibull::new(1.0, shape_true).unwrap();
        let lambda_true: Vec<f64> =
            (0..y).map(|g| 2.0 + (2.0 * std::f64::consts::PI * g as f64 / y as f64).sin()).collect();
        let values: Vec<f64> = (0..y * reps)
            .map(|t| lambda_true[t % y] * base.sample(&mut rng))
            .collect();
        let fit = fit_seasonal_weibull(&series(values), y, 3).unwrap();
        for g in 0..y {
            assert!(
                (fit.shapes()[g] - shape_true).abs() < 0.25,
                "phase {g}: shape {} vs {shape_true}",
                fit.shapes()[g]
            );
            assert!(
                (fit.scales()[g] / lambda_true[g] - 1.0).abs() < 0.05,
                "phase {g}: scale {} vs {}",
                fit.scales()[g],
                lambda_true[g]
            );
        }
    }

    #[test]
    fn seasonal_fit_rejects_degenerate_data() {
        // Constant data: moment ratio 1, unreachable by any Weibull shape.
        let constant = series(vec![3.0; 100]);
        assert!(matches!(
            fit_seasonal_weibull(&constant, 1, 0),
            Err(Error::Numeric(_))
        ));
        // Negative data is outside the Weibull support.
        let negative = series(vec![1.0, -0.5, 2.0, 1.5]);
        assert!(matches!(
            fit_seasonal_weibull(&negative, 2, 0),
            Err(Error::Data(_))
        ));
        // Shorter than the period: empty phases.
        let short = series(vec![1.0, 2.0]);
        assert!(fit_seasonal_weibull(&short, 5, 0).is_err());
    }

    #[test]
    fn moment_ratio_solver_hits_known_shapes() {
        // Exponential: k = 1 has ratio Γ(2)²/Γ(3) = 1/2.
        let k = solve_shape_from_moment_ratio(0.5).unwrap();
        assert!((k - 1.0).abs() < 1e-9, "k = {k}");
        // Round-trip a few shapes through the ratio.
        for shape in [0.5, 1.3, 2.19, 7.0, 20.0] {
            let r = weibull_moment_ratio(shape);
            let back = solve_shape_from_moment_ratio(r).unwrap();
            assert!((back - shape).abs() < 1e-6 * shape, "{shape} -> {back}");
        }
    }

    #[test]
    fn smoother_reproduces_quadratics_exactly() {
        // A global quadratic (in circular offset) restricted to a window is
        // fit exactly by the local quadratic — on a linear-plus-constant
        // sequence over the circle the smoother must return the input where
        // the window does not wrap the discontinuity. Use a pure constant
        // plus exact quadratic bump instead: constant sequences are
        // reproduced exactly at every phase.
        let y = vec![5.0; 40];
        let out = circular_local_quadratic(&y, 4);
        for v in out {
            assert!((v - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn smoother_shrinks_noise_but_tracks_seasonality() {
        let n = 100;
        let mut rng = SeededRng::new(9);
        let truth: Vec<f64> =
            (0..n).map(|g| 3.0 + (2.0 * std::f64::consts::PI * g as f64 / n as f64).cos()).collect();
        let noisy: Vec<f64> = truth
            .iter()
            .map(|&v| v + 0.3 * rng.standard_normal())
            .collect();
        let smooth = circular_local_quadratic(&noisy, 8);
        let raw_err: f64 = noisy
            .iter()
            .zip(&truth)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let smooth_err: f64 = smooth
            .iter()
            .zip(&truth)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        assert!(
            smooth_err < 0.35 * raw_err,
            "smoothing did not reduce error: {smooth_err} vs {raw_err}"
        );
    }
}
