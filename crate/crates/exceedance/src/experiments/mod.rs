//! Batch experiment harness: reproducible bias studies, model
//! comparisons, and single-series estimation runs.
//!
//! Everything here is plumbing around the estimator and model layers:
//! a declarative [`ExperimentConfig`] (JSON-overridable, hashed into the
//! report metadata), a deterministic seed-derivation scheme so that any
//! replication can be re-run in isolation, and tabular [`CurveReport`]
//! emission in CSV or JSON. The statistical content lives in
//! [`bias`](self::bias) (censoring-bias studies with hard upper-bound
//! checks) and [`compare`](self::compare) (empirical-versus-model
//! return-time curves); this module owns configuration and dispatch.
//!
//! Replications fan out across a rayon worker pool; results are merged
//! by replication index, so reports are byte-identical regardless of
//! worker count. Unit conversion between steps/hours and years happens
//! only at report assembly — the estimator core is unit-free.

pub mod bias;
pub mod compare;
pub mod ingest;
pub mod report;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::calibration::{AcfModelParams, TransformApprox};
use crate::dist::Weibull;
use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::threshold::ThresholdSchedule;
use crate::uncertainty::{estimate_return_time, EstimateOptions};

pub use ingest::{ingest_csv, ingest_csv_text, HeaderPolicy};
pub use report::{
    emit_curves, emit_curves_to_path, parse_curves_csv, CurveReport, CurveRow, NamedCurve,
    OutputFormat, ReportMetadata,
};

/// Hours per mean Julian year; the only unit-conversion constant in the
/// crate. Time-valued report cells are produced in steps (= hours for
/// hourly data) and divided by this when [`TimeUnit::Years`] is chosen.
pub const HOURS_PER_YEAR: f64 = 8766.0;

// ---- seed streams ----
//
// Every random draw in an experiment comes from a seed derived as
// `root_seed + offset`; the generator expands a 64-bit seed through a
// mixing function, so consecutive offsets give statistically unrelated
// streams. The layout keeps the ranges disjoint: one long "data" run,
// one oracle run, one stream per replication, and a per-model block of
// replication streams for comparison experiments.

/// Offset of the single ground-truth/data simulation.
pub const STREAM_DATA: u64 = 0;
/// Offset of the long oracle run in bias studies.
pub const STREAM_ORACLE: u64 = 1;
/// First replication offset; replication `r` uses `BASE + r`.
pub const STREAM_REPLICATION_BASE: u64 = 0x100;
/// First model-curve offset; model `m`, replication `r` uses
/// `BASE + m·BLOCK + r`.
pub const STREAM_MODEL_BASE: u64 = 0x1_0000_0000;
/// Stride between the replication blocks of consecutive model curves.
pub const STREAM_MODEL_BLOCK: u64 = 0x1_0000;

/// Derive the seed of one named stream from the root seed.
pub fn stream_seed(root: u64, offset: u64) -> u64 {
    root.wrapping_add(offset)
}

// ---- experiment selection ----

/// The experiment families the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Censoring-bias study on a stationary Gaussian AR(1).
    BiasStationary,
    /// Censoring-bias study on a seasonally scaled AR(1), estimated both
    /// with the phase-aware correction and with the stationary formula.
    BiasSeasonal,
    /// Empirical-versus-model return-time curves, stationary models.
    CompareStationary,
    /// Empirical-versus-model return-time curves, seasonal models.
    CompareNonstationary,
    /// Plain estimation with confidence intervals on a supplied series.
    Estimate,
}

/// Unit of the time-valued report columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeUnit {
    /// Raw steps of the series (hours, for hourly observations).
    Hours,
    /// Years of `8766` hourly steps.
    Years,
}

impl TimeUnit {
    /// Multiplier applied to step-valued cells.
    pub fn factor(self) -> f64 {
        match self {
            TimeUnit::Hours => 1.0,
            TimeUnit::Years => 1.0 / HOURS_PER_YEAR,
        }
    }
}

// ---- fixtures ----

/// The calibrated wind-climate constants every experiment defaults to:
/// the Weibull marginal, the observed moments, the algebraic ACF of the
/// deseasonalized and of the seasonal series, the correlation-transform
/// approximation, the AR(1)/OU rate, and the t-copula pair. All of them
/// can be overridden per run (or replaced wholesale by refitting from
/// data); shipping them as data keeps every published curve reproducible
/// without the original observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Fixtures {
    /// Weibull scale of the hourly marginal (m/s).
    pub weibull_scale: f64,
    /// Weibull shape of the hourly marginal.
    pub weibull_shape: f64,
    /// Mean of the observed series (m/s).
    pub observed_mean: f64,
    /// Standard deviation of the observed series (m/s).
    pub observed_sd: f64,
    /// Algebraic ACF of the deseasonalized series.
    pub acf: AcfModelParams,
    /// Algebraic ACF of the seasonal (uniform-reduced) series.
    pub seasonal_acf: AcfModelParams,
    /// Observed-to-latent correlation transform approximation.
    pub transform: TransformApprox,
    /// AR(1)/OU mean-reversion rate per step.
    pub ar1_theta: f64,
    /// t-copula degrees of freedom.
    pub t_nu: f64,
    /// t-copula lag-one correlation.
    pub t_rho: f64,
}

impl Default for Fixtures {
    fn default() -> Self {
        Self {
            weibull_scale: 11.05,
            weibull_shape: 2.19,
            observed_mean: 9.80,
            observed_sd: 4.71,
            acf: AcfModelParams::new(10.23, 1.63, 1.38)
                .expect("default ACF parameters are valid"),
            seasonal_acf: AcfModelParams::new(10.65, 1.56, 0.83)
                .expect("default seasonal ACF parameters are valid"),
            transform: TransformApprox::new(0.065, 0.373)
                .expect("default transform parameters are valid"),
            ar1_theta: 0.027,
            t_nu: 13.4,
            t_rho: 0.964,
        }
    }
}

impl Fixtures {
    /// The Weibull marginal distribution.
    pub fn weibull(&self) -> Result<Weibull> {
        Weibull::new(self.weibull_scale, self.weibull_shape)
    }

    /// Load fixtures from a JSON file (all fields required).
    pub fn from_json(path: &std::path::Path) -> Result<Self> {
        read_config_json(path)
    }
}

/// Read and parse a JSON configuration-layer file, reporting problems as
/// configuration errors that name the file.
fn read_config_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Partial fixtures for layered configuration; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FixturesOverlay {
    pub weibull_scale: Option<f64>,
    pub weibull_shape: Option<f64>,
    pub observed_mean: Option<f64>,
    pub observed_sd: Option<f64>,
    pub acf: Option<AcfModelParams>,
    pub seasonal_acf: Option<AcfModelParams>,
    pub transform: Option<TransformApprox>,
    pub ar1_theta: Option<f64>,
    pub t_nu: Option<f64>,
    pub t_rho: Option<f64>,
}

impl FixturesOverlay {
    /// Overwrite the fields of `base` that this overlay sets.
    pub fn apply(&self, base: &mut Fixtures) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field.clone() { base.$field = v; })*
            };
        }
        set!(
            weibull_scale,
            weibull_shape,
            observed_mean,
            observed_sd,
            acf,
            seasonal_acf,
            transform,
            ar1_theta,
            t_nu,
            t_rho
        );
    }
}

// ---- configuration ----

/// Full description of one experiment run.
///
/// Built in three layers: [`ExperimentConfig::default_for`] the chosen
/// kind, then command-line flags, then an optional JSON
/// [`ConfigOverlay`] file (the file wins). The canonical JSON encoding
/// of the result — excluding the output destination, which does not
/// affect the numbers — is hashed into the report metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ExperimentConfig {
    /// Which experiment family to run.
    pub experiment: ExperimentKind,
    /// Length `T` of each simulated series.
    pub series_length: usize,
    /// Number of independent replications.
    pub replications: usize,
    /// Root seed; all streams derive from it.
    pub seed: u64,
    /// Threshold grid, strictly increasing.
    pub b_grid: Vec<f64>,
    /// Unit label of the thresholds (documentation only).
    pub b_unit: String,
    /// Unit of the time-valued output columns.
    pub time_unit: TimeUnit,
    /// AR(1) lag-one correlation used by the bias studies.
    pub rho: f64,
    /// Season length `Y` for the seasonal experiments.
    pub season_period: usize,
    /// Confidence level for intervals.
    pub gamma: f64,
    /// Highest autocovariance lag in CLT intervals (`None` = default
    /// `⌈10·log10 T⌉`).
    pub max_lag: Option<usize>,
    /// Length of the long oracle run in bias studies.
    pub oracle_length: usize,
    /// Calibrated model constants.
    pub fixtures: Fixtures,
    /// Where to write the report (`None` = stdout).
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
    /// Report encoding.
    #[serde(skip_serializing)]
    pub format: OutputFormat,
}

/// `[start, start+step, …, end]` built from integer multiples so the
/// grid is exact for binary-representable steps.
pub fn threshold_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step).round() as usize + 1;
    (0..n).map(|i| start + i as f64 * step).collect()
}

impl ExperimentConfig {
    /// The documented defaults of each experiment family.
    ///
    /// Bias studies: `T = 20000`, 200 replications, AR(1) `ρ = 0.97`
    /// over thresholds `2.5..4.5` (stationary) or seasonal `ρ = 0.7`,
    /// `Y = 1000` over `1.5..3.5`, oracle length `5·10⁶`. Comparisons:
    /// one `T = 10⁶` data run, wind-speed grid `15..25` m/s, 20 (or 10
    /// for the seasonal variant, whose simulations are costlier)
    /// replications per simulated model curve. Estimation: empty grid —
    /// the caller supplies thresholds.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let base = Self {
            experiment: kind,
            series_length: 20_000,
            replications: 200,
            seed: 1729,
            b_grid: Vec::new(),
            b_unit: "level".into(),
            time_unit: TimeUnit::Hours,
            rho: 0.97,
            season_period: 1000,
            gamma: 0.95,
            max_lag: None,
            oracle_length: 5_000_000,
            fixtures: Fixtures::default(),
            output: None,
            format: OutputFormat::Csv,
        };
        match kind {
            ExperimentKind::BiasStationary => Self {
                b_grid: threshold_grid(2.5, 4.5, 0.25),
                ..base
            },
            ExperimentKind::BiasSeasonal => Self {
                b_grid: threshold_grid(1.5, 3.5, 0.25),
                rho: 0.7,
                ..base
            },
            ExperimentKind::CompareStationary => Self {
                series_length: 1_000_000,
                replications: 20,
                b_grid: threshold_grid(15.0, 25.0, 1.0),
                b_unit: "m/s".into(),
                ..base
            },
            ExperimentKind::CompareNonstationary => Self {
                series_length: 1_000_000,
                replications: 10,
                b_grid: threshold_grid(15.0, 25.0, 1.0),
                b_unit: "m/s".into(),
                rho: 0.7,
                ..base
            },
            ExperimentKind::Estimate => Self {
                replications: 1,
                ..base
            },
        }
    }

    /// Check the cross-field invariants.
    pub fn validate(&self) -> Result<()> {
        if self.series_length < 2 {
            return Err(Error::Config(format!(
                "series length must be at least 2, got {}",
                self.series_length
            )));
        }
        if self.replications < 1 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if !self.b_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config(
                "threshold grid must be strictly increasing".into(),
            ));
        }
        if let Some(bad) = self.b_grid.iter().find(|b| !b.is_finite()) {
            return Err(Error::Config(format!("non-finite threshold {bad}")));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::Config(format!(
                "confidence level must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        if !(self.rho.abs() < 1.0) {
            return Err(Error::Config(format!(
                "AR(1) correlation must lie in (-1, 1), got {}",
                self.rho
            )));
        }
        if self.season_period < 2 {
            return Err(Error::Config(format!(
                "season period must be at least 2, got {}",
                self.season_period
            )));
        }
        if self.oracle_length < 2 {
            return Err(Error::Config(format!(
                "oracle length must be at least 2, got {}",
                self.oracle_length
            )));
        }
        Ok(())
    }

    /// SHA-256 hex digest of the canonical JSON encoding (output
    /// destination excluded), recorded in the report metadata.
    pub fn config_hash(&self) -> String {
        let canonical =
            serde_json::to_string(self).expect("config serialization cannot fail");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The report metadata block for this configuration.
    pub fn metadata(&self) -> ReportMetadata {
        ReportMetadata {
            config_hash: self.config_hash(),
            seed: self.seed,
            replications: self.replications,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Partial configuration read from a JSON file; every field optional.
/// The experiment kind is fixed by the caller (the CLI verb) and cannot
/// be changed from a file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigOverlay {
    pub series_length: Option<usize>,
    pub replications: Option<usize>,
    pub seed: Option<u64>,
    pub b_grid: Option<Vec<f64>>,
    pub b_unit: Option<String>,
    pub time_unit: Option<TimeUnit>,
    pub rho: Option<f64>,
    pub season_period: Option<usize>,
    pub gamma: Option<f64>,
    pub max_lag: Option<usize>,
    pub oracle_length: Option<usize>,
    pub fixtures: Option<FixturesOverlay>,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ConfigOverlay {
    /// Load an overlay from a JSON file.
    pub fn from_json(path: &std::path::Path) -> Result<Self> {
        read_config_json(path)
    }

    /// Overwrite the fields of `base` that this overlay sets.
    pub fn apply(&self, base: &mut ExperimentConfig) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field.clone() { base.$field = v; })*
            };
        }
        set!(
            series_length,
            replications,
            seed,
            b_grid,
            b_unit,
            time_unit,
            rho,
            season_period,
            gamma,
            oracle_length,
            format
        );
        if let Some(lag) = self.max_lag {
            base.max_lag = Some(lag);
        }
        if let Some(path) = &self.output {
            base.output = Some(path.clone());
        }
        if let Some(fixtures) = &self.fixtures {
            fixtures.apply(&mut base.fixtures);
        }
    }
}

// ---- replication aggregation ----

/// Linearly interpolated order statistic on sorted values (the common
/// "type 7" rule: the `p`-quantile sits at fractional rank `(n−1)p`).
pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    debug_assert!(n > 0 && (0.0..=1.0).contains(&p));
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - h.floor()) * (sorted[hi] - sorted[lo])
}

/// Summarize per-replication estimates at one threshold, conditional on
/// the estimate being finite: count, conditional mean, a normal
/// `mean ± z·sd/√n` band for the Monte Carlo error of the mean (needs
/// `n ≥ 2`), and interpolated 10%/90% quantiles of the finite estimates.
/// `point` is left empty for the caller to fill (oracle value or curve
/// value). With no finite estimate the row is blank apart from the
/// structural bound.
pub(crate) fn conditional_row(b: f64, estimates: &[f64], z: f64, bound: f64) -> CurveRow {
    let mut finite: Vec<f64> = estimates.iter().copied().filter(|v| v.is_finite()).collect();
    finite.sort_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
    let n = finite.len();
    let mut row = CurveRow::empty(b);
    row.bound = Some(bound);
    row.n_finite = n;
    if n == 0 {
        return row;
    }
    let mean = finite.iter().sum::<f64>() / n as f64;
    row.cond_mean = Some(mean);
    row.q10 = Some(quantile_sorted(&finite, 0.10));
    row.q90 = Some(quantile_sorted(&finite, 0.90));
    if n >= 2 {
        let var = finite.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        row.ci_lo = Some(mean - z * se);
        row.ci_hi = Some(mean + z * se);
    }
    row
}

// ---- dispatch ----

/// Run the experiment the configuration selects. Comparison runs accept
/// an optional observed series as ground truth (otherwise synthetic
/// data are generated from the fixtures); estimation requires one.
pub fn run(config: &ExperimentConfig, data: Option<&TimeSeries>) -> Result<CurveReport> {
    config.validate()?;
    match config.experiment {
        ExperimentKind::BiasStationary | ExperimentKind::BiasSeasonal => {
            bias::run_bias_study(config)
        }
        ExperimentKind::CompareStationary | ExperimentKind::CompareNonstationary => {
            compare::run_model_comparison(config, data)
        }
        ExperimentKind::Estimate => {
            let series = data.ok_or_else(|| {
                Error::Config("the estimate experiment requires an input series".into())
            })?;
            run_estimate(config, series)
        }
    }
}

/// Estimate the mean exceedance time with a CLT confidence interval at
/// every grid threshold of a supplied series.
///
/// Thresholds the series resolves produce a `point` and interval; a
/// threshold whose looped scan censors (or that the series never
/// exceeds) yields a row with everything blank — the estimand is not
/// identified there, which is itself a finding. `n_finite` counts the
/// start points used and `bound` records the structural maximum
/// `(T−1)/2` any finite estimate must respect.
pub fn run_estimate(config: &ExperimentConfig, series: &TimeSeries) -> Result<CurveReport> {
    let schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| ThresholdSchedule::constant(b))
        .collect();
    let bound = (series.len() as f64 - 1.0) / 2.0;
    let rows = estimate_rows(config, series, &schedules, bound)?;
    Ok(CurveReport::single(config.metadata(), rows))
}

/// Seasonal variant of [`run_estimate`]: fit per-phase Weibull marginals
/// with period `config.season_period` to the series, push the
/// observations through them onto the uniform scale, and estimate each
/// threshold against the matching phase-periodic levels. The estimand is
/// the mean wait from a season start, and any finite estimate is capped
/// by `(T+Y−2)/2` rather than `(T−1)/2`.
pub fn run_estimate_seasonal(
    config: &ExperimentConfig,
    series: &TimeSeries,
) -> Result<CurveReport> {
    let y = config.season_period;
    let marginal =
        crate::nonstat::fit_seasonal_weibull(series, y, marginal_fit_bandwidth(y))?;
    let transform = crate::nonstat::TimeTransform::marginal_uniform(marginal);
    let uniformized = crate::nonstat::transform_series(series, &transform)?;
    let schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| {
            crate::nonstat::transformed_threshold(&ThresholdSchedule::constant(b), &transform, 0)
        })
        .collect::<Result<_>>()?;
    let bound = (series.len() + y) as f64 / 2.0 - 1.0;
    let rows = estimate_rows(config, &uniformized, &schedules, bound)?;
    Ok(CurveReport::single(config.metadata(), rows))
}

/// Bandwidth heuristic for fitting a seasonal marginal from data: a
/// twentieth of the season keeps sub-seasonal structure while averaging
/// out per-phase noise.
pub(crate) fn marginal_fit_bandwidth(period: usize) -> usize {
    period / 20 + 1
}

/// Per-threshold single-series estimates with CLT intervals, one row per
/// grid point; a threshold whose scan censors (or that is never
/// exceeded) yields a blank row. Shared by [`run_estimate`] and the
/// empirical curve of the comparison experiments.
pub(crate) fn estimate_rows(
    config: &ExperimentConfig,
    series: &TimeSeries,
    schedules: &[ThresholdSchedule],
    bound: f64,
) -> Result<Vec<CurveRow>> {
    let options = EstimateOptions {
        gamma: config.gamma,
        max_lag: config.max_lag,
        bartlett: false,
    };
    let factor = config.time_unit.factor();
    config
        .b_grid
        .iter()
        .zip(schedules)
        .map(|(&b, schedule)| {
            match estimate_return_time(series, schedule, &options) {
                Ok(estimate) => Ok(CurveRow {
                    b,
                    point: Some(estimate.point),
                    ci_lo: Some(estimate.ci.0),
                    ci_hi: Some(estimate.ci.1),
                    cond_mean: None,
                    q10: None,
                    q90: None,
                    n_finite: estimate.n_used,
                    bound: Some(bound),
                }
                .scale_times(factor)),
                Err(Error::InfiniteMoment) | Err(Error::NoExceedance) => {
                    Ok(CurveRow::empty(b))
                }
                Err(other) => Err(other),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids_match_documented_ranges() {
        let stat = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        assert_eq!(stat.b_grid.len(), 9);
        assert_eq!(stat.b_grid[0], 2.5);
        assert_eq!(*stat.b_grid.last().unwrap(), 4.5);
        assert_eq!(stat.rho, 0.97);
        let seas = ExperimentConfig::default_for(ExperimentKind::BiasSeasonal);
        assert_eq!(seas.b_grid[0], 1.5);
        assert_eq!(seas.rho, 0.7);
        assert_eq!(seas.season_period, 1000);
        let cmp = ExperimentConfig::default_for(ExperimentKind::CompareStationary);
        assert_eq!(cmp.b_grid.len(), 11);
        assert_eq!(cmp.series_length, 1_000_000);
        for config in [&stat, &seas, &cmp] {
            config.validate().unwrap();
        }
    }

    #[test]
    fn validation_catches_bad_fields() {
        let mut config = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        config.b_grid = vec![2.0, 2.0];
        assert!(config.validate().is_err());
        let mut config = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        config.replications = 0;
        assert!(config.validate().is_err());
        let mut config = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        config.gamma = 1.0;
        assert!(config.validate().is_err());
        let mut config = ExperimentConfig::default_for(ExperimentKind::BiasSeasonal);
        config.season_period = 1;
        assert!(config.validate().is_err());
    }

    #[test]
    fn config_hash_tracks_semantics_not_destination() {
        let mut a = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        let mut b = a.clone();
        b.output = Some(PathBuf::from("/tmp/elsewhere.csv"));
        b.format = OutputFormat::Json;
        assert_eq!(a.config_hash(), b.config_hash());
        a.seed = 2;
        assert_ne!(a.config_hash(), b.config_hash());
    }

    #[test]
    fn overlay_wins_over_base_fields() {
        let mut config = ExperimentConfig::default_for(ExperimentKind::BiasStationary);
        let overlay: ConfigOverlay = serde_json::from_str(
            r#"{
                "seed": 99,
                "b-grid": [1.0, 2.0],
                "time-unit": "years",
                "fixtures": {"ar1-theta": 0.05}
            }"#,
        )
        .unwrap();
        overlay.apply(&mut config);
        assert_eq!(config.seed, 99);
        assert_eq!(config.b_grid, vec![1.0, 2.0]);
        assert_eq!(config.time_unit, TimeUnit::Years);
        assert_eq!(config.fixtures.ar1_theta, 0.05);
        // Untouched fields keep their defaults.
        assert_eq!(config.rho, 0.97);
        assert_eq!(config.fixtures.weibull_scale, 11.05);
    }

    #[test]
    fn overlay_rejects_unknown_fields() {
        let result: std::result::Result<ConfigOverlay, _> =
            serde_json::from_str(r#"{"series-lenght": 100}"#);
        assert!(result.is_err());
    }

    #[test]
    fn fixtures_round_trip_through_json() {
        let fixtures = Fixtures::default();
        let text = serde_json::to_string_pretty(&fixtures).unwrap();
        let back: Fixtures = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fixtures);
    }

    #[test]
    fn shipped_fixture_file_matches_defaults() {
        // The reference constants exist both in code (Default) and as a
        // file users can copy and edit; the two must never drift apart.
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/defaults.json");
        let loaded = Fixtures::from_json(&path).unwrap();
        assert_eq!(loaded, Fixtures::default());
    }

    #[test]
    fn stream_layout_keeps_ranges_disjoint() {
        // Replications and model streams may not collide with the data
        // and oracle streams for any plausible replication count.
        let root = 7;
        let reps = 10_000u64;
        for r in [0, reps - 1] {
            let s = stream_seed(root, STREAM_REPLICATION_BASE + r);
            assert!(s > stream_seed(root, STREAM_ORACLE));
            assert!(stream_seed(root, STREAM_MODEL_BASE + r) > s);
        }
    }

    #[test]
    fn conditional_summary_filters_infinities() {
        // Four replications, one censored: statistics over [2, 4, 6].
        let row = conditional_row(3.0, &[4.0, f64::INFINITY, 2.0, 6.0], 2.0, 100.0);
        assert_eq!(row.n_finite, 3);
        assert_eq!(row.cond_mean, Some(4.0));
        assert_eq!(row.bound, Some(100.0));
        assert_eq!(row.point, None);
        // Interpolated order statistics: rank 0.2 and 1.8 of [2, 4, 6].
        assert!((row.q10.unwrap() - 2.4).abs() < 1e-12);
        assert!((row.q90.unwrap() - 5.6).abs() < 1e-12);
        // sd = 2, se = 2/√3, band = mean ± z·se with z = 2.
        let se = 2.0 / 3.0_f64.sqrt();
        assert!((row.ci_lo.unwrap() - (4.0 - 2.0 * se)).abs() < 1e-12);
        assert!((row.ci_hi.unwrap() - (4.0 + 2.0 * se)).abs() < 1e-12);

        // All censored: blank row apart from the bound.
        let empty = conditional_row(3.0, &[f64::INFINITY], 2.0, 100.0);
        assert_eq!(empty.n_finite, 0);
        assert_eq!(empty.cond_mean, None);
        // A single finite value: quantiles collapse, no error band.
        let one = conditional_row(3.0, &[5.0], 2.0, 100.0);
        assert_eq!(one.cond_mean, Some(5.0));
        assert_eq!(one.q10, Some(5.0));
        assert_eq!(one.ci_lo, None);
    }

    #[test]
    fn estimate_run_produces_interval_rows() {
        // A deterministic alternating series: every start resolves fast.
        let values: Vec<f64> = (0..200).map(|i| if i % 4 == 0 { 5.0 } else { 1.0 }).collect();
        let series = TimeSeries::new(values).unwrap();
        let mut config = ExperimentConfig::default_for(ExperimentKind::Estimate);
        config.b_grid = vec![3.0, 10.0];
        let report = run(&config, Some(&series)).unwrap();
        report.validate().unwrap();
        let rows = &report.curves[0].rows;
        // b = 3: exceedances every 4 steps, mean waiting time (0+1+2+3)/4.
        assert_eq!(rows[0].point, Some(1.5));
        assert!(rows[0].ci_lo.unwrap() <= 1.5 && rows[0].ci_hi.unwrap() >= 1.5);
        assert_eq!(rows[0].bound, Some((200.0 - 1.0) / 2.0));
        // b = 10: never exceeded — unresolved row, no fabricated numbers.
        assert_eq!(rows[1].point, None);
        assert_eq!(rows[1].n_finite, 0);
    }

    #[test]
    fn estimate_requires_a_series() {
        let config = ExperimentConfig::default_for(ExperimentKind::Estimate);
        assert!(matches!(run(&config, None), Err(Error::Config(_))));
    }

    #[test]
    fn seasonal_estimate_uses_phase_aware_bound() {
        // A seasonal Weibull series with a 20-phase scale cycle.
        let marginal = crate::nonstat::MarginalModel::new(
            (0..20)
                .map(|s| 8.0 + 4.0 * (std::f64::consts::PI * s as f64 / 20.0).sin().powi(2))
                .collect(),
            vec![2.0; 20],
        )
        .unwrap();
        let model = crate::models::ProcessModel::new(
            crate::models::ModelKind::GaussAr1 { theta: 0.3 },
            Some(marginal),
        )
        .unwrap();
        let series = model.simulate_observed(10_000, 5).unwrap();
        let mut config = ExperimentConfig::default_for(ExperimentKind::Estimate);
        config.season_period = 20;
        config.b_grid = vec![12.0];
        let report = run_estimate_seasonal(&config, &series).unwrap();
        let row = &report.curves[0].rows[0];
        assert!(row.point.unwrap() > 0.0);
        assert_eq!(row.bound, Some((10_000.0 + 20.0) / 2.0 - 1.0));
        assert!(row.ci_lo.unwrap() <= row.point.unwrap());
    }

    #[test]
    fn year_conversion_scales_time_cells() {
        let values: Vec<f64> = (0..200).map(|i| if i % 4 == 0 { 5.0 } else { 1.0 }).collect();
        let series = TimeSeries::new(values).unwrap();
        let mut config = ExperimentConfig::default_for(ExperimentKind::Estimate);
        config.b_grid = vec![3.0];
        config.time_unit = TimeUnit::Years;
        let report = run(&config, Some(&series)).unwrap();
        assert_eq!(report.curves[0].rows[0].point, Some(1.5 / HOURS_PER_YEAR));
        assert_eq!(report.curves[0].rows[0].b, 3.0);
    }
}
