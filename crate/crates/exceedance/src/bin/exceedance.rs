//! Batch command-line driver: estimation, simulation, calibration, bias
//! studies, and model comparisons over CSV series.
//!
//! Every subcommand builds an [`ExperimentConfig`] in three layers —
//! built-in defaults for the chosen experiment, command-line flags, then
//! an optional JSON config file that overrides both — runs the matching
//! library entry point, and writes a deterministic CSV or JSON report to
//! the chosen output (stdout by default). Exit codes: 0 on success, 2
//! for configuration errors, 3 for data/IO errors, 4 for numeric
//! failures. Set `EXCEEDANCE_WORKERS` to pin the worker-pool size;
//! replication order (and therefore output bytes) does not depend on it.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exceedance::calibration::{
    ar1_theta_from_lag1, empirical_acf, fit_acf_model, fit_ar1_theta, fit_t_copula,
    fit_transform_params, fit_weibull,
};
use exceedance::experiments::{
    bias::run_bias_study,
    compare::{run_model_comparison, synthetic_seasonal_marginal},
    emit_curves, emit_curves_to_path, ingest_csv, run_estimate, run_estimate_seasonal,
    ConfigOverlay, CurveReport, ExperimentConfig, ExperimentKind, Fixtures, HeaderPolicy,
    OutputFormat, TimeUnit, STREAM_DATA,
};
use exceedance::models::{ModelKind, ProcessModel};
use exceedance::nonstat::{fit_seasonal_weibull, transform_series, MarginalModel, TimeTransform};
use exceedance::{Error, Result, TimeSeries};

#[derive(Parser)]
#[command(
    name = "exceedance",
    version,
    about = "Censoring-corrected return-period estimation and model assessment",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate mean exceedance times with confidence intervals on a CSV series.
    Estimate(EstimateArgs),
    /// Simulate a calibrated process model and write the path as CSV.
    Simulate(SimulateArgs),
    /// Fit marginal, autocorrelation, and dependence parameters from a CSV series.
    Calibrate(CalibrateArgs),
    /// Replicated censoring-bias study against a long-run oracle.
    BiasStudy(BiasStudyArgs),
    /// Empirical-versus-model return-time curves.
    Compare(CompareArgs),
}

// ---- shared flag groups ----

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TimeUnitArg {
    Hours,
    Years,
}

impl From<TimeUnitArg> for TimeUnit {
    fn from(arg: TimeUnitArg) -> Self {
        match arg {
            TimeUnitArg::Hours => TimeUnit::Hours,
            TimeUnitArg::Years => TimeUnit::Years,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeaderArg {
    /// Parse every row.
    None,
    /// Drop the first row unconditionally.
    Skip,
    /// Drop the first row only if it does not parse as a number.
    Auto,
}

impl From<HeaderArg> for HeaderPolicy {
    fn from(arg: HeaderArg) -> Self {
        match arg {
            HeaderArg::None => HeaderPolicy::None,
            HeaderArg::Skip => HeaderPolicy::Skip,
            HeaderArg::Auto => HeaderPolicy::Auto,
        }
    }
}

/// Flags mirroring the experiment-configuration fields; unset flags keep
/// the experiment's defaults, and a `--config` file overrides both.
#[derive(Args)]
struct ExperimentFlags {
    /// JSON config file; its fields override the other flags.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// JSON fixtures file replacing the built-in calibrated constants.
    #[arg(long, value_name = "PATH")]
    fixtures: Option<PathBuf>,
    /// Length T of each simulated series.
    #[arg(long)]
    series_length: Option<usize>,
    /// Number of independent replications.
    #[arg(long)]
    replications: Option<usize>,
    /// Root seed for all simulation streams.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated strictly increasing thresholds, e.g. "2.5,3,3.5".
    #[arg(long, value_delimiter = ',', value_name = "B,B,...")]
    b_grid: Option<Vec<f64>>,
    /// Unit label for the thresholds (documentation only).
    #[arg(long)]
    b_unit: Option<String>,
    /// Unit of the time-valued output columns.
    #[arg(long, value_enum)]
    time_unit: Option<TimeUnitArg>,
    /// AR(1) lag-one correlation of the bias-study process.
    #[arg(long)]
    rho: Option<f64>,
    /// Season length Y for seasonal experiments.
    #[arg(long)]
    season_period: Option<usize>,
    /// Confidence level of intervals.
    #[arg(long)]
    gamma: Option<f64>,
    /// Highest autocovariance lag used in CLT intervals.
    #[arg(long)]
    max_lag: Option<usize>,
    /// Length of the long oracle run in bias studies.
    #[arg(long)]
    oracle_length: Option<usize>,
    /// Output path (stdout if omitted).
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

impl ExperimentFlags {
    /// Layer defaults, fixtures file, flags, and config file into the
    /// final validated configuration.
    fn build(&self, kind: ExperimentKind) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::default_for(kind);
        if let Some(path) = &self.fixtures {
            config.fixtures = Fixtures::from_json(path)?;
        }
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field.clone() { config.$field = v; })*
            };
        }
        set!(
            series_length,
            replications,
            seed,
            b_grid,
            b_unit,
            rho,
            season_period,
            gamma,
            oracle_length
        );
        if let Some(unit) = self.time_unit {
            config.time_unit = unit.into();
        }
        if let Some(format) = self.format {
            config.format = format.into();
        }
        if let Some(lag) = self.max_lag {
            config.max_lag = Some(lag);
        }
        if let Some(path) = &self.output {
            config.output = Some(path.clone());
        }
        if let Some(path) = &self.config {
            ConfigOverlay::from_json(path)?.apply(&mut config);
        }
        config.validate()?;
        Ok(config)
    }
}

/// Flags selecting a CSV input series.
#[derive(Args)]
struct InputFlags {
    /// Input CSV file, one observation per row.
    #[arg(long, short, value_name = "PATH")]
    input: PathBuf,
    /// 0-based column to read.
    #[arg(long, default_value_t = 0)]
    column: usize,
    /// First-row handling.
    #[arg(long, value_enum, default_value_t = HeaderArg::Auto)]
    header: HeaderArg,
}

impl InputFlags {
    fn load(&self) -> Result<TimeSeries> {
        ingest_csv(&self.input, self.column, self.header.into())
    }
}

// ---- subcommand argument sets ----

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    input: InputFlags,
    /// Treat the series as seasonal: fit per-phase Weibull marginals with
    /// period --season-period and scan phase-matched thresholds.
    #[arg(long)]
    seasonal: bool,
    #[command(flatten)]
    experiment: ExperimentFlags,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    /// Independent draws.
    Iid,
    /// Gaussian AR(1) with the fixture rate.
    Ar1,
    /// Stationary Gaussian process with the fixture algebraic ACF.
    GaussianAcf,
    /// Ornstein-Uhlenbeck skeleton (AR(1) with rho = exp(-theta)).
    Ou,
    /// Markov t-copula with the fixture (nu, rho_t).
    TCopula,
    /// Seasonally scaled AR(1) on its own scale (observed = latent).
    SeasonalAr1,
    /// Gaussian copula with the seasonal ACF through per-phase Weibull
    /// margins (scale modulated by the seasonal profile).
    SeasonalGaussian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    /// Push through the Weibull marginal (wind-speed scale).
    Observed,
    /// Uniform margins (probability scale).
    Uniform,
    /// The model's latent scale (normal / t / scaled normal).
    Latent,
}

#[derive(Args)]
struct SimulateArgs {
    /// Which calibrated model to simulate.
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Output scale of the path.
    #[arg(long, value_enum, default_value_t = ScaleArg::Observed)]
    scale: ScaleArg,
    #[command(flatten)]
    experiment: ExperimentFlags,
}

#[derive(Args)]
struct CalibrateArgs {
    #[command(flatten)]
    input: InputFlags,
    /// Also fit per-phase Weibull marginals and the seasonal ACF with
    /// period --season-period.
    #[arg(long)]
    seasonal: bool,
    /// Also fit the t-copula by simulated ACF matching under the tail
    /// constraint (adds several seconds of simulation per candidate).
    #[arg(long)]
    with_t_copula: bool,
    /// Highest lag used for ACF fitting.
    #[arg(long, default_value_t = 200)]
    acf_horizon: usize,
    #[command(flatten)]
    experiment: ExperimentFlags,
}

#[derive(Args)]
struct BiasStudyArgs {
    /// Run the seasonal variant instead of the stationary one.
    #[arg(long)]
    seasonal: bool,
    #[command(flatten)]
    experiment: ExperimentFlags,
}

#[derive(Args)]
struct CompareArgs {
    /// Observed series as ground truth (synthesized from the fixtures if
    /// omitted).
    #[arg(long, short, value_name = "PATH")]
    input: Option<PathBuf>,
    /// 0-based column to read.
    #[arg(long, default_value_t = 0)]
    column: usize,
    /// First-row handling.
    #[arg(long, value_enum, default_value_t = HeaderArg::Auto)]
    header: HeaderArg,
    /// Compare seasonal models instead of stationary ones.
    #[arg(long)]
    seasonal: bool,
    #[command(flatten)]
    experiment: ExperimentFlags,
}

// ---- execution ----

fn main() {
    let cli = Cli::parse();
    if let Err(err) = configure_workers().and_then(|()| dispatch(cli)) {
        eprintln!("error: {err}");
        std::process::exit(i32::from(err.exit_code()));
    }
}

/// Size the worker pool from `EXCEEDANCE_WORKERS` (unset = one worker
/// per core). Reports stay byte-identical either way.
fn configure_workers() -> Result<()> {
    let Ok(raw) = std::env::var("EXCEEDANCE_WORKERS") else {
        return Ok(());
    };
    let workers: usize = raw
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            Error::Config(format!(
                "EXCEEDANCE_WORKERS must be a positive integer, got {raw:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot size the worker pool: {e}")))
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::BiasStudy(args) => cmd_bias_study(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

/// Write a curve report to the configured destination.
fn write_report(report: &CurveReport, config: &ExperimentConfig) -> Result<()> {
    match &config.output {
        Some(path) => emit_curves_to_path(report, config.format, path),
        None => {
            let stdout = std::io::stdout();
            emit_curves(report, config.format, &mut stdout.lock())
        }
    }
}

/// Soft preconditions of seasonal fitting, reported on stderr.
fn warn_seasonal_length(len: usize, period: usize) {
    if len < 2 * period {
        eprintln!(
            "warning: series length {len} is below twice the season period {period}; \
             per-phase marginal fits will be noisy"
        );
    }
    if len % period != 0 {
        eprintln!(
            "warning: series length {len} is not an integer multiple of the season period \
             {period}; phases mix at the wrap-around seam"
        );
    }
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let config = args.experiment.build(ExperimentKind::Estimate)?;
    let series = args.input.load()?;
    let report = if args.seasonal {
        warn_seasonal_length(series.len(), config.season_period);
        run_estimate_seasonal(&config, &series)?
    } else {
        run_estimate(&config, &series)?
    };
    write_report(&report, &config)
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    // Kind selection never depends on the grid, so any experiment's
    // defaults serve; the comparison defaults match the simulation use
    // case (long single paths).
    let config = args.experiment.build(ExperimentKind::CompareStationary)?;
    let fixtures = &config.fixtures;
    let kind = match args.model {
        ModelArg::Iid => ModelKind::Iid,
        ModelArg::Ar1 => ModelKind::GaussAr1 {
            theta: fixtures.ar1_theta,
        },
        ModelArg::GaussianAcf => ModelKind::GaussGeneral {
            zeta: fixtures.acf.zeta(),
            eta: fixtures.acf.eta(),
            kappa: fixtures.acf.kappa(),
        },
        ModelArg::Ou => ModelKind::Ou {
            theta: fixtures.ar1_theta,
        },
        ModelArg::TCopula => ModelKind::TCopulaMarkov {
            nu: fixtures.t_nu,
            rho_t: fixtures.t_rho,
        },
        ModelArg::SeasonalAr1 => ModelKind::SeasonalScaledAr1 {
            rho: config.rho,
            scales: exceedance::models::seasonal_scale_profile(config.season_period, 0.0)?,
        },
        ModelArg::SeasonalGaussian => ModelKind::GaussGeneral {
            zeta: fixtures.seasonal_acf.zeta(),
            eta: fixtures.seasonal_acf.eta(),
            kappa: fixtures.seasonal_acf.kappa(),
        },
    };
    let marginal = match args.model {
        // The scaled-AR(1) kind carries its own scale; a marginal is
        // rejected by the model.
        ModelArg::SeasonalAr1 => None,
        ModelArg::SeasonalGaussian => Some(synthetic_seasonal_marginal(
            fixtures,
            config.season_period,
        )?),
        _ => Some(MarginalModel::constant(
            fixtures.weibull_scale,
            fixtures.weibull_shape,
        )?),
    };
    let attach = args.scale == ScaleArg::Observed;
    let model = ProcessModel::new(kind, if attach { marginal } else { None })?;
    let seed = exceedance::experiments::stream_seed(config.seed, STREAM_DATA);
    let series = match args.scale {
        ScaleArg::Observed => model.simulate_observed(config.series_length, seed)?,
        ScaleArg::Uniform => model.simulate_uniform(config.series_length, seed)?,
        ScaleArg::Latent => model.simulate_latent(config.series_length, seed)?,
    };
    let mut text = String::with_capacity(series.len() * 20);
    for v in series.values() {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_calibrate(args: CalibrateArgs) -> Result<()> {
    let config = args.experiment.build(ExperimentKind::Estimate)?;
    let series = args.input.load()?;
    if args.acf_horizon == 0 || args.acf_horizon >= series.len() {
        return Err(Error::Config(format!(
            "--acf-horizon must lie in [1, {}), got {}",
            series.len(),
            args.acf_horizon
        )));
    }

    let mut report = serde_json::Map::new();

    // Marginal: Weibull profile MLE.
    let weibull_fit = fit_weibull(&series)?;
    let weibull = weibull_fit.distribution()?;
    report.insert(
        "weibull".into(),
        serde_json::json!({
            "params": {"scale": weibull_fit.scale, "shape": weibull_fit.shape},
            "diagnostics": {
                "n-used": weibull_fit.n_used,
                "n-zeros-dropped": weibull_fit.n_zeros_dropped,
            },
        }),
    );

    // Observed moments (used by the correlation transform).
    let mean = series.values().iter().sum::<f64>() / series.len() as f64;
    let sd = (series
        .values()
        .iter()
        .map(|v| (v - mean).powi(2))
        .sum::<f64>()
        / series.len() as f64)
        .sqrt();
    report.insert(
        "moments".into(),
        serde_json::json!({"params": {"mean": mean, "sd": sd}}),
    );

    // Autocorrelation: empirical, then the algebraic-decay fit.
    let acf = empirical_acf(&series, args.acf_horizon)?;
    let lags: Vec<f64> = (1..=args.acf_horizon).map(|l| l as f64).collect();
    let acf_fit = fit_acf_model(&acf[1..], &lags)?;
    report.insert(
        "acf".into(),
        serde_json::json!({
            "params": {
                "zeta": acf_fit.params.zeta(),
                "eta": acf_fit.params.eta(),
                "kappa": acf_fit.params.kappa(),
            },
            "residual": acf_fit.residual,
        }),
    );

    // Observed-to-latent correlation transform on a uniform interior grid.
    let rho_grid: Vec<f64> = (1..40).map(|i| i as f64 / 40.0).collect();
    let transform_fit = fit_transform_params(&weibull, mean, sd, &rho_grid)?;
    report.insert(
        "transform".into(),
        serde_json::json!({
            "params": {
                "xi": transform_fit.params.xi(),
                "upsilon": transform_fit.params.upsilon(),
            },
            "residual": transform_fit.residual,
            "diagnostics": {"max-abs-error": transform_fit.max_abs_error},
        }),
    );

    // Latent AR(1)/OU rate: full-horizon ACF matching, plus the lag-one
    // shortcut as a diagnostic.
    let theta = fit_ar1_theta(&acf_fit.params.function(), 100, &transform_fit.params)?;
    let theta_lag1 = ar1_theta_from_lag1(acf[1], &transform_fit.params)?;
    report.insert(
        "ar1".into(),
        serde_json::json!({
            "params": {"theta": theta},
            "diagnostics": {"theta-lag1": theta_lag1},
        }),
    );

    if args.with_t_copula {
        // PIT through the fitted Weibull, then ACF matching under the
        // extreme tail-dependence constraint.
        let u: Vec<f64> = series.values().iter().map(|&v| weibull.cdf(v)).collect();
        let u_series = TimeSeries::new(u)?;
        let t_fit = fit_t_copula(&u_series, args.acf_horizon.min(100), 1.0 - 1e-4)?;
        report.insert(
            "t-copula".into(),
            serde_json::json!({
                "params": {"nu": t_fit.nu, "rho-t": t_fit.rho_t},
                "residual": t_fit.objective,
                "diagnostics": {"tail-dependence": t_fit.tail_dependence},
            }),
        );
    }

    if args.seasonal {
        warn_seasonal_length(series.len(), config.season_period);
        let period = config.season_period;
        let bandwidth = period / 20 + 1;
        let marginal = fit_seasonal_weibull(&series, period, bandwidth)?;
        let uniformized =
            transform_series(&series, &TimeTransform::marginal_uniform(marginal.clone()))?;
        let seasonal_acf = empirical_acf(&uniformized, args.acf_horizon)?;
        let seasonal_fit = fit_acf_model(&seasonal_acf[1..], &lags)?;
        report.insert(
            "seasonal".into(),
            serde_json::json!({
                "params": {
                    "period": period,
                    "acf": {
                        "zeta": seasonal_fit.params.zeta(),
                        "eta": seasonal_fit.params.eta(),
                        "kappa": seasonal_fit.params.kappa(),
                    },
                },
                "residual": seasonal_fit.residual,
                "diagnostics": {
                    "bandwidth": bandwidth,
                    "scale-min": marginal.scales().iter().cloned().fold(f64::INFINITY, f64::min),
                    "scale-max": marginal.scales().iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                },
            }),
        );
    }

    let text = serde_json::to_string_pretty(&serde_json::Value::Object(report))?;
    match &config.output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_bias_study(args: BiasStudyArgs) -> Result<()> {
    let kind = if args.seasonal {
        ExperimentKind::BiasSeasonal
    } else {
        ExperimentKind::BiasStationary
    };
    let config = args.experiment.build(kind)?;
    let report = run_bias_study(&config)?;
    write_report(&report, &config)
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let kind = if args.seasonal {
        ExperimentKind::CompareNonstationary
    } else {
        ExperimentKind::CompareStationary
    };
    let config = args.experiment.build(kind)?;
    let series = match &args.input {
        Some(path) => Some(ingest_csv(path, args.column, args.header.into())?),
        None => None,
    };
    if args.seasonal {
        if let Some(s) = &series {
            warn_seasonal_length(s.len(), config.season_period);
        }
    }
    let report = run_model_comparison(&config, series.as_ref())?;
    write_report(&report, &config)
}
