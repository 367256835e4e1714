//! Censoring-corrected return-period estimation for stationary and
//! seasonal time series, with tools to assess parametric process models
//! against the estimates.
//!
//! # What this crate does
//!
//! Given a single observed window `V_0 .. V_{T-1}` and a family of target
//! regions (a constant threshold, a periodic threshold profile, or an
//! arbitrary schedule), it estimates the mean waiting time until the
//! series enters the region — the return period of the event — together
//! with a central-limit-theorem standard error and confidence interval.
//! Waits that are censored by the window edge are handled by the *looped*
//! correction (scan past the edge with the series read cyclically), which
//! removes the short-wait bias of simply discarding censored starts.
//!
//! On top of the estimator sit:
//!
//! - closed-form run-length moments for constant thresholds
//!   ([`hitting::RunDecomposition`]),
//! - time transforms that reduce seasonal (periodically scaled) series to
//!   stationary ones ([`nonstat`]),
//! - simulators and closed forms for reference processes — IID, AR(1),
//!   general stationary Gaussian copulas, Student-t copulas, diffusion
//!   limits ([`models`]),
//! - calibration of those models to data: marginal fits, autocorrelation
//!   models, correlation transforms between the observation scale and the
//!   Gaussian driver scale ([`calibration`]),
//! - batch experiment drivers with reproducible seeding and stable output
//!   formats ([`experiments`]).
//!
//! # Quick start
//!
//! ```
//! use exceedance::prelude::*;
//!
//! // Ten days of hourly values in which 30.0 is exceeded twice.
//! let mut values = vec![10.0; 240];
//! values[80] = 31.5;
//! values[200] = 32.0;
//! let series = TimeSeries::new(values)?;
//!
//! // Mean waiting time until the series exceeds 30.0, with a 95% CI.
//! let est = estimate_return_time(&series, &ThresholdSchedule::constant(30.0), &EstimateOptions::default())?;
//! assert!(est.point > 0.0);
//! # Ok::<(), exceedance::Error>(())
//! ```
//!
//! The `examples/` directory exercises every major capability as a
//! runnable program (`cargo run --release --example <name>`), and the
//! `exceedance` binary exposes the batch drivers as subcommands.

pub mod calibration;
pub mod dist;
pub mod error;
pub mod experiments;
pub mod hitting;
pub mod models;
pub mod nonstat;
pub mod numeric;
pub mod rng;
pub mod series;
pub mod threshold;
pub mod uncertainty;

pub use error::{Error, Result};
pub use series::{ExtendedTime, TimeSeries};
pub use threshold::ThresholdSchedule;
pub use uncertainty::{estimate_return_time, EstimateOptions, ExceedanceEstimate};

/// The commonly used surface in one import.
pub mod prelude {
    pub use crate::dist::Weibull;
    pub use crate::error::{Error, Result};
    pub use crate::hitting::{
        discard_censored_estimate, hitting_time, hitting_times, looped_hitting_time,
        looped_hitting_times, mean_exceedance_estimate, run_length_moment, RunDecomposition,
    };
    pub use crate::models::{
        cluster_size_estimate, iid_mean_exceedance, ou_mean_exceedance, simulate_ar1,
        simulate_gaussian_acf, simulate_seasonal_scaled_ar1, simulate_t_markov,
        t_copula_tail_dependence, tail_dependence_estimate, upcrossing_rate_estimate,
        AcfFunction, ModelKind, OuMethod, ProcessModel,
    };
    pub use crate::calibration::{
        ar1_theta_from_lag1, correlation_transform_numeric, empirical_acf, fit_acf_model,
        fit_ar1_theta, fit_t_copula, fit_transform_params, fit_weibull,
        t_copula_rho_for_tail_dependence, AcfFit, AcfModelParams, TCopulaFit, TransformApprox,
        TransformFit, WeibullFit,
    };
    pub use crate::experiments::{
        bias::run_bias_study, compare::run_model_comparison, emit_curves, emit_curves_to_path,
        ingest_csv, run, run_estimate, run_estimate_seasonal, CurveReport, CurveRow,
        ExperimentConfig, ExperimentKind, Fixtures, HeaderPolicy, NamedCurve, OutputFormat,
        TimeUnit,
    };
    pub use crate::nonstat::{
        fit_seasonal_weibull, nonstat_mean_exceedance, transform_series, transformed_threshold,
        MarginalModel, TimeTransform,
    };
    pub use crate::rng::SeededRng;
    pub use crate::series::{ExtendedTime, TimeSeries};
    pub use crate::threshold::ThresholdSchedule;
    pub use crate::uncertainty::{estimate_return_time, EstimateOptions, ExceedanceEstimate};
}
