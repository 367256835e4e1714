//! Censoring-bias studies: how far the looped estimator sits from the
//! truth when the mean exceedance time approaches its structural
//! maximum.
//!
//! Each study simulates many independent series of length `T`, computes
//! the mean-exceedance estimate on every one over a threshold grid, and
//! summarizes the estimates conditional on being finite against an
//! oracle value taken from one much longer run. Censoring caps any
//! finite estimate at `(T−1)/2` for constant thresholds and at
//! `(T+Y−2)/2` for phase-periodic thresholds with season length `Y`;
//! both caps are enforced as hard checks — a violation means the
//! estimator is broken, and the run aborts with diagnostics rather than
//! emitting a corrupt curve.
//!
//! The seasonal study estimates each simulated series twice: once
//! phase-aware (standardize by the seasonal scale profile, scan the
//! matching relative threshold sequence) and once with the plain
//! constant-threshold estimator that ignores the seasonality. Emitting
//! both curves against the same oracle shows where the stationary
//! shortcut is usable and where it is materially biased.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hitting::mean_exceedance_estimate;
use crate::models::{seasonal_scale_profile, simulate_ar1, simulate_scaled_ar1};
use crate::nonstat::{transform_series, transformed_threshold, TimeTransform};
use crate::numeric::normal_quantile;
use crate::series::TimeSeries;
use crate::threshold::ThresholdSchedule;

use super::{
    conditional_row, stream_seed, CurveReport, CurveRow, ExperimentConfig, ExperimentKind,
    NamedCurve, STREAM_ORACLE, STREAM_REPLICATION_BASE,
};

/// Name of the phase-aware curve in the seasonal study's report.
pub const SEASONAL_CURVE: &str = "seasonal";
/// Name of the constant-threshold comparator curve.
pub const COMPARATOR_CURVE: &str = "stationary-comparator";

/// Tolerance of the structural-bound hard check: caps are exact in real
/// arithmetic, so only accumulated round-off may sit above them.
const BOUND_SLACK: f64 = 1e-9;

/// Run the bias study the configuration selects (stationary AR(1) or
/// seasonally scaled AR(1)); see the module docs for the design.
pub fn run_bias_study(config: &ExperimentConfig) -> Result<CurveReport> {
    config.validate()?;
    match config.experiment {
        ExperimentKind::BiasStationary => run_stationary(config),
        ExperimentKind::BiasSeasonal => run_seasonal(config),
        _ => Err(Error::Config(
            "run_bias_study requires a bias-stationary or bias-seasonal configuration".into(),
        )),
    }
}

fn check_bound(estimate: f64, bound: f64, b: f64, replication: usize) -> Result<()> {
    if estimate.is_finite() && estimate > bound + BOUND_SLACK {
        return Err(Error::Numeric(format!(
            "structural bound violated at replication {replication}, threshold {b}: finite \
             estimate {estimate} exceeds the maximum {bound} the censored scan can produce"
        )));
    }
    Ok(())
}

/// Turn the per-replication estimate matrix (row = replication, column =
/// threshold) into report rows carrying the oracle as `point`.
fn assemble_rows(
    config: &ExperimentConfig,
    estimates: &[Vec<f64>],
    oracle: &[f64],
    bound: f64,
) -> Vec<CurveRow> {
    let z = normal_quantile(0.5 + config.gamma / 2.0);
    let factor = config.time_unit.factor();
    config
        .b_grid
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            let column: Vec<f64> = estimates.iter().map(|rep| rep[j]).collect();
            let mut row = conditional_row(b, &column, z, bound);
            row.point = Some(oracle[j]);
            row.scale_times(factor)
        })
        .collect()
}

// ---- stationary study ----

fn run_stationary(config: &ExperimentConfig) -> Result<CurveReport> {
    let t = config.series_length;
    let bound = (t as f64 - 1.0) / 2.0;
    let schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| ThresholdSchedule::constant(b))
        .collect();

    // Oracle: one run long enough that no threshold censors.
    let oracle_series = simulate_ar1(
        config.rho,
        config.oracle_length,
        stream_seed(config.seed, STREAM_ORACLE),
    )?;
    let oracle = oracle_values(&oracle_series, &schedules, &config.b_grid, config.oracle_length)?;
    drop(oracle_series);

    let estimates: Vec<Vec<f64>> = (0..config.replications)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let seed = stream_seed(config.seed, STREAM_REPLICATION_BASE + r as u64);
            let series = simulate_ar1(config.rho, t, seed)?;
            config
                .b_grid
                .iter()
                .zip(&schedules)
                .map(|(&b, schedule)| {
                    let estimate = mean_exceedance_estimate(&series, schedule)?;
                    check_bound(estimate, bound, b, r)?;
                    Ok(estimate)
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let rows = assemble_rows(config, &estimates, &oracle, bound);
    let report = CurveReport::single(config.metadata(), rows);
    report.validate()?;
    Ok(report)
}

fn oracle_values(
    series: &TimeSeries,
    schedules: &[ThresholdSchedule],
    b_grid: &[f64],
    oracle_length: usize,
) -> Result<Vec<f64>> {
    b_grid
        .iter()
        .zip(schedules)
        .map(|(&b, schedule)| {
            let value = mean_exceedance_estimate(series, schedule)?;
            if !value.is_finite() {
                return Err(Error::Numeric(format!(
                    "oracle run of length {oracle_length} censors at threshold {b}; \
                     increase oracle-length or shrink the grid"
                )));
            }
            Ok(value)
        })
        .collect()
}

// ---- seasonal study ----

fn run_seasonal(config: &ExperimentConfig) -> Result<CurveReport> {
    let t = config.series_length;
    let y = config.season_period;
    let bound_seasonal = (t + y - 2) as f64 / 2.0;
    let bound_comparator = (t as f64 - 1.0) / 2.0;

    let scales = seasonal_scale_profile(y, 0.0)?;
    let transform = TimeTransform::periodic_scale(scales.clone())?;
    // Phase-aware scan: standardized series against the relative
    // threshold sequence `b / S_s` shared by every start.
    let seasonal_schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| transformed_threshold(&ThresholdSchedule::constant(b), &transform, 0))
        .collect::<Result<_>>()?;
    let constant_schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| ThresholdSchedule::constant(b))
        .collect();

    // Oracle through the same phase-aware route.
    let oracle = {
        let series = simulate_scaled_ar1(
            config.rho,
            &scales,
            config.oracle_length,
            stream_seed(config.seed, STREAM_ORACLE),
        )?;
        let standardized = transform_series(&series, &transform)?;
        oracle_values(
            &standardized,
            &seasonal_schedules,
            &config.b_grid,
            config.oracle_length,
        )?
    };

    // Each replication is estimated both ways on the same simulated path.
    type Pair = (Vec<f64>, Vec<f64>);
    let estimates: Vec<Pair> = (0..config.replications)
        .into_par_iter()
        .map(|r| -> Result<Pair> {
            let seed = stream_seed(config.seed, STREAM_REPLICATION_BASE + r as u64);
            let series = simulate_scaled_ar1(config.rho, &scales, t, seed)?;
            let standardized = transform_series(&series, &transform)?;
            let seasonal = config
                .b_grid
                .iter()
                .zip(&seasonal_schedules)
                .map(|(&b, schedule)| {
                    let estimate = mean_exceedance_estimate(&standardized, schedule)?;
                    check_bound(estimate, bound_seasonal, b, r)?;
                    Ok(estimate)
                })
                .collect::<Result<Vec<f64>>>()?;
            let comparator = config
                .b_grid
                .iter()
                .zip(&constant_schedules)
                .map(|(&b, schedule)| {
                    let estimate = mean_exceedance_estimate(&series, schedule)?;
                    check_bound(estimate, bound_comparator, b, r)?;
                    Ok(estimate)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok((seasonal, comparator))
        })
        .collect::<Result<_>>()?;

    let seasonal_matrix: Vec<Vec<f64>> = estimates.iter().map(|(s, _)| s.clone()).collect();
    let comparator_matrix: Vec<Vec<f64>> = estimates.iter().map(|(_, c)| c.clone()).collect();

    let report = CurveReport {
        metadata: config.metadata(),
        curves: vec![
            NamedCurve {
                name: SEASONAL_CURVE.into(),
                rows: assemble_rows(config, &seasonal_matrix, &oracle, bound_seasonal),
            },
            NamedCurve {
                name: COMPARATOR_CURVE.into(),
                rows: assemble_rows(config, &comparator_matrix, &oracle, bound_comparator),
            },
        ],
    };
    report.validate()?;
    Ok(report)
}
