//! Empirical-versus-model return-time curves.
//!
//! Given one observed (or synthesized) series, the comparison emits the
//! censoring-corrected empirical estimate with its CLT interval at every
//! grid threshold, next to the mean exceedance time each calibrated
//! parametric model implies at the same thresholds. Closed-form model
//! curves (independent draws, the Ornstein–Uhlenbeck diffusion) are
//! exact points; simulation-based curves average replicated long runs
//! and report the Monte Carlo error of that average.
//!
//! The stationary run compares against independent, AR(1),
//! general-Gaussian-ACF, and OU models on the observed (Weibull) scale.
//! The seasonal run works on the uniformized scale — observations are
//! pushed through the per-phase marginal CDF and thresholds become
//! phase-periodic — and compares against seasonal-independent,
//! general-Gaussian-ACF, and t-copula models. When no series is
//! supplied, ground truth is synthesized from the fixtures (stationary:
//! AR(1) through the Weibull marginal; seasonal: the general-ACF
//! Gaussian copula through a scale-modulated seasonal Weibull), which
//! turns the run into a self-consistency study: the matching model
//! curve should track the empirical one within its interval.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hitting::mean_exceedance_estimate;
use crate::models::{
    iid_mean_exceedance, ou_mean_exceedance, seasonal_scale_profile, ModelKind, OuMethod,
    ProcessModel,
};
use crate::nonstat::{
    fit_seasonal_weibull, transform_series, transformed_threshold, MarginalModel, TimeTransform,
};
use crate::numeric::normal_quantile;
use crate::series::TimeSeries;
use crate::threshold::ThresholdSchedule;

use super::{
    conditional_row, estimate_rows, marginal_fit_bandwidth, stream_seed, CurveReport, CurveRow,
    ExperimentConfig, ExperimentKind, Fixtures, NamedCurve, STREAM_DATA, STREAM_MODEL_BASE,
    STREAM_MODEL_BLOCK,
};

/// Truncation tolerance of the OU closed-form series.
const OU_TOLERANCE: f64 = 1e-10;

/// Curve names, in emission order, of the stationary comparison.
pub const STATIONARY_CURVES: [&str; 5] = ["empirical", "independent", "ar1", "gaussian-acf", "ou"];
/// Curve names, in emission order, of the seasonal comparison.
pub const SEASONAL_CURVES: [&str; 4] =
    ["empirical", "independent-seasonal", "gaussian-acf", "t-copula"];

/// Run the model comparison the configuration selects. `data` is the
/// observed series; `None` synthesizes ground truth from the fixtures.
pub fn run_model_comparison(
    config: &ExperimentConfig,
    data: Option<&TimeSeries>,
) -> Result<CurveReport> {
    config.validate()?;
    match config.experiment {
        ExperimentKind::CompareStationary => run_stationary(config, data),
        ExperimentKind::CompareNonstationary => run_seasonal(config, data),
        _ => Err(Error::Config(
            "run_model_comparison requires a compare-stationary or compare-nonstationary \
             configuration"
                .into(),
        )),
    }
}

/// A replicated simulation-based model curve: for each replication,
/// simulate one path and estimate every threshold on it; aggregate
/// conditional on the estimate being finite, with the curve value set to
/// the conditional mean and `ci` to its Monte Carlo error band.
fn model_curve_rows(
    config: &ExperimentConfig,
    model_index: u64,
    simulate: impl Fn(u64) -> Result<TimeSeries> + Sync,
    schedules: &[ThresholdSchedule],
    bound: f64,
) -> Result<Vec<CurveRow>> {
    let matrix: Vec<Vec<f64>> = (0..config.replications)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let seed = stream_seed(
                config.seed,
                STREAM_MODEL_BASE + model_index * STREAM_MODEL_BLOCK + r as u64,
            );
            let path = simulate(seed)?;
            schedules
                .iter()
                .map(|schedule| mean_exceedance_estimate(&path, schedule))
                .collect()
        })
        .collect::<Result<_>>()?;
    let z = normal_quantile(0.5 + config.gamma / 2.0);
    let factor = config.time_unit.factor();
    Ok(config
        .b_grid
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            let column: Vec<f64> = matrix.iter().map(|rep| rep[j]).collect();
            let mut row = conditional_row(b, &column, z, bound);
            row.point = row.cond_mean;
            row.scale_times(factor)
        })
        .collect())
}

/// A closed-form model curve: exact points, no uncertainty cells. `None`
/// marks a threshold where the model's mean exceedance time is infinite.
fn closed_form_rows(
    config: &ExperimentConfig,
    mut value: impl FnMut(f64) -> Result<Option<f64>>,
) -> Result<Vec<CurveRow>> {
    let factor = config.time_unit.factor();
    config
        .b_grid
        .iter()
        .map(|&b| {
            let mut row = CurveRow::empty(b);
            row.point = value(b)?;
            Ok(row.scale_times(factor))
        })
        .collect()
}

// ---- stationary comparison ----

fn run_stationary(config: &ExperimentConfig, data: Option<&TimeSeries>) -> Result<CurveReport> {
    let t = config.series_length;
    let fixtures = &config.fixtures;
    let weibull = fixtures.weibull()?;
    let marginal = MarginalModel::constant(fixtures.weibull_scale, fixtures.weibull_shape)?;

    let ar1_model = ProcessModel::new(
        ModelKind::GaussAr1 {
            theta: fixtures.ar1_theta,
        },
        Some(marginal.clone()),
    )?;
    let acf_model = ProcessModel::new(
        ModelKind::GaussGeneral {
            zeta: fixtures.acf.zeta(),
            eta: fixtures.acf.eta(),
            kappa: fixtures.acf.kappa(),
        },
        Some(marginal),
    )?;

    let synthesized;
    let observed: &TimeSeries = match data {
        Some(series) => series,
        None => {
            synthesized = ar1_model.simulate_observed(t, stream_seed(config.seed, STREAM_DATA))?;
            &synthesized
        }
    };

    let schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| ThresholdSchedule::constant(b))
        .collect();
    let bound_data = (observed.len() as f64 - 1.0) / 2.0;
    let bound_model = (t as f64 - 1.0) / 2.0;

    let curves = vec![
        NamedCurve {
            name: STATIONARY_CURVES[0].into(),
            rows: estimate_rows(config, observed, &schedules, bound_data)?,
        },
        NamedCurve {
            name: STATIONARY_CURVES[1].into(),
            rows: closed_form_rows(config, |b| Ok(Some(iid_mean_exceedance(&weibull, b))))?,
        },
        NamedCurve {
            name: STATIONARY_CURVES[2].into(),
            rows: model_curve_rows(
                config,
                0,
                |seed| ar1_model.simulate_observed(t, seed),
                &schedules,
                bound_model,
            )?,
        },
        NamedCurve {
            name: STATIONARY_CURVES[3].into(),
            rows: model_curve_rows(
                config,
                1,
                |seed| acf_model.simulate_observed(t, seed),
                &schedules,
                bound_model,
            )?,
        },
        NamedCurve {
            name: STATIONARY_CURVES[4].into(),
            rows: closed_form_rows(config, |b| {
                ou_mean_exceedance(
                    fixtures.ar1_theta,
                    weibull.to_normal(b),
                    OuMethod::Series,
                    OU_TOLERANCE,
                )
                .map(Some)
            })?,
        },
    ];

    let report = CurveReport {
        metadata: config.metadata(),
        curves,
    };
    report.validate()?;
    Ok(report)
}

// ---- seasonal comparison ----

/// Mean exceedance time of level `b` from a season-start for independent
/// draws through the per-phase marginals: with per-phase non-exceedance
/// probabilities `q_j = F_j(b)` and season product `A = Π q_j`, the wait
/// is `𝓔 = (Σ_{s<Y} Π_{j≤s} q_j) / (1 − A)`; `None` when the level is
/// never exceeded (`A = 1`).
fn seasonal_iid_mean(marginal: &MarginalModel, b: f64) -> Option<f64> {
    let mut partial = 1.0;
    let mut sum = 0.0;
    for j in 0..marginal.period() {
        partial *= marginal.cdf(j, b);
        sum += partial;
    }
    let escape = 1.0 - partial;
    if escape <= 0.0 {
        return None;
    }
    Some(sum / escape)
}

/// The synthetic seasonal marginal: the fixture Weibull scale modulated
/// by the seasonal profile, shape held constant across phases.
pub fn synthetic_seasonal_marginal(fixtures: &Fixtures, period: usize) -> Result<MarginalModel> {
    let profile = seasonal_scale_profile(period, 0.0)?;
    MarginalModel::new(
        profile.iter().map(|s| fixtures.weibull_scale * s).collect(),
        vec![fixtures.weibull_shape; period],
    )
}

fn run_seasonal(config: &ExperimentConfig, data: Option<&TimeSeries>) -> Result<CurveReport> {
    let t = config.series_length;
    let y = config.season_period;
    let fixtures = &config.fixtures;

    // The seasonal marginal: refit from supplied data, or synthesized
    // from the fixtures.
    let marginal = match data {
        Some(series) => fit_seasonal_weibull(series, y, marginal_fit_bandwidth(y))?,
        None => synthetic_seasonal_marginal(fixtures, y)?,
    };

    let acf_model = ProcessModel::new(
        ModelKind::GaussGeneral {
            zeta: fixtures.seasonal_acf.zeta(),
            eta: fixtures.seasonal_acf.eta(),
            kappa: fixtures.seasonal_acf.kappa(),
        },
        None,
    )?;
    let t_model = ProcessModel::new(
        ModelKind::TCopulaMarkov {
            nu: fixtures.t_nu,
            rho_t: fixtures.t_rho,
        },
        None,
    )?;

    let synthesized;
    let observed: &TimeSeries = match data {
        Some(series) => series,
        None => {
            // Ground truth: the general-ACF Gaussian copula pushed
            // through the seasonal marginal.
            let truth = ProcessModel::new(acf_model.kind.clone(), Some(marginal.clone()))?;
            synthesized = truth.simulate_observed(t, stream_seed(config.seed, STREAM_DATA))?;
            &synthesized
        }
    };

    // Uniformize once; thresholds become phase-periodic levels on the
    // uniform scale, shared by the empirical scan and every simulated
    // model path (which are generated with uniform margins directly).
    let transform = TimeTransform::marginal_uniform(marginal.clone());
    let uniformized = transform_series(observed, &transform)?;
    let schedules: Vec<ThresholdSchedule> = config
        .b_grid
        .iter()
        .map(|&b| transformed_threshold(&ThresholdSchedule::constant(b), &transform, 0))
        .collect::<Result<_>>()?;
    let bound_data = (uniformized.len() + y) as f64 / 2.0 - 1.0;
    let bound_model = (t + y) as f64 / 2.0 - 1.0;

    let curves = vec![
        NamedCurve {
            name: SEASONAL_CURVES[0].into(),
            rows: estimate_rows(config, &uniformized, &schedules, bound_data)?,
        },
        NamedCurve {
            name: SEASONAL_CURVES[1].into(),
            rows: closed_form_rows(config, |b| Ok(seasonal_iid_mean(&marginal, b)))?,
        },
        NamedCurve {
            name: SEASONAL_CURVES[2].into(),
            rows: model_curve_rows(
                config,
                0,
                |seed| acf_model.simulate_uniform(t, seed),
                &schedules,
                bound_model,
            )?,
        },
        NamedCurve {
            name: SEASONAL_CURVES[3].into(),
            rows: model_curve_rows(
                config,
                1,
                |seed| t_model.simulate_uniform(t, seed),
                &schedules,
                bound_model,
            )?,
        },
    ];

    let report = CurveReport {
        metadata: config.metadata(),
        curves,
    };
    report.validate()?;
    Ok(report)
}
