//! Parametric reference processes and their exceedance statistics.
//!
//! Return-period estimates from a single window are only half the story;
//! the other half is asking whether a *model* fitted to the same data
//! implies compatible return periods. This module provides the reference
//! processes used for that comparison:
//!
//! - IID draws, the memoryless baseline (`𝓔_b = 1/ℙ(V>b) − 1` in closed
//!   form, [`iid_mean_exceedance`]),
//! - the Gaussian AR(1) copula and the general stationary Gaussian copula
//!   with an arbitrary autocorrelation function ([`simulate_ar1`],
//!   [`simulate_gaussian_acf`]),
//! - its continuous-time interpolation, the standardized
//!   Ornstein–Uhlenbeck process, whose mean exceedance time has closed
//!   series/integral/asymptotic forms ([`ou_mean_exceedance`]),
//! - a Markovian Student-t copula with genuine extremal clustering
//!   ([`simulate_t_markov`], [`t_copula_tail_dependence`]),
//! - a seasonally rescaled AR(1) for cyclostationary experiments
//!   ([`simulate_seasonal_scaled_ar1`]).
//!
//! Alongside the simulators sit the empirical clustering statistics that
//! separate these models in the tail: tail dependence, upcrossing rate,
//! and mean cluster size, tied together by the exact count identity
//! `#successors-above = #upcrossings + #both-above` (see
//! [`ExceedancePairCounts`]).

mod ou;
mod simulate;

pub use ou::{ou_mean_exceedance, phi_series, OuMethod};
pub use simulate::{
    seasonal_scale_profile, simulate_ar1, simulate_gaussian_acf, simulate_scaled_ar1,
    simulate_seasonal_scaled_ar1, simulate_t_markov,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dist::Weibull;
use crate::error::{Error, Result};
use crate::nonstat::MarginalModel;
use crate::numeric::{normal_cdf, student_t_cdf};
use crate::rng::SeededRng;
use crate::series::TimeSeries;

// ---- autocorrelation functions ----

/// A stationary autocorrelation function `lag ↦ ρ(lag)` with its named
/// parameters, used to specify general Gaussian copula processes.
#[derive(Clone)]
pub struct AcfFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    params: Vec<(String, f64)>,
}

impl AcfFunction {
    /// Wrap an arbitrary autocorrelation function. The caller is
    /// responsible for `eval(0) = 1` and `|eval(s)| ≤ 1`; simulators check
    /// what they can (value at zero, embedding validity).
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        params: Vec<(String, f64)>,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            params,
        }
    }

    /// White noise: `ρ(0) = 1`, zero at every positive lag.
    pub fn white_noise() -> Self {
        Self::new(|lag| if lag == 0.0 { 1.0 } else { 0.0 }, Vec::new())
    }

    /// Exponential decay `ρ(s) = e^{−θs}` — the AR(1)/OU autocorrelation
    /// with rate `θ > 0`.
    pub fn exponential(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::Config(format!(
                "exponential ACF rate must be positive, got {theta}"
            )));
        }
        Ok(Self::new(
            move |lag| (-theta * lag).exp(),
            vec![("theta".into(), theta)],
        ))
    }

    /// The three-parameter algebraic-decay family
    /// `ρ(s) = (1 + κ (s/ζ)^η)^{−1/(ηκ)}` with `ζ, η, κ > 0`: equals 1 at
    /// lag 0, decays strictly, and interpolates between exponential-like
    /// and heavy-tailed correlation decay.
    pub fn algebraic(zeta: f64, eta: f64, kappa: f64) -> Result<Self> {
        for (name, v) in [("zeta", zeta), ("eta", eta), ("kappa", kappa)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "algebraic ACF parameter {name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self::new(
            move |lag| (1.0 + kappa * (lag / zeta).powf(eta)).powf(-1.0 / (eta * kappa)),
            vec![
                ("zeta".into(), zeta),
                ("eta".into(), eta),
                ("kappa".into(), kappa),
            ],
        ))
    }

    /// Evaluate the function at a (non-negative) lag.
    pub fn eval(&self, lag: f64) -> f64 {
        (self.eval)(lag)
    }

    /// The named parameters this function was built from.
    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }
}

impl std::fmt::Debug for AcfFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AcfFunction(")?;
        for (i, (name, v)) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ")")
    }
}

// ---- process models ----

/// The dependence structure of a [`ProcessModel`], on its latent
/// (standardized) scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum ModelKind {
    /// Independent standard normal draws.
    Iid,
    /// Gaussian AR(1) with lag-1 correlation `e^{−θ}`.
    GaussAr1 { theta: f64 },
    /// Stationary Gaussian process with the algebraic-decay ACF family
    /// (the general-ACF escape hatch is [`simulate_gaussian_acf`], which
    /// accepts any [`AcfFunction`]).
    GaussGeneral { zeta: f64, eta: f64, kappa: f64 },
    /// Standardized Ornstein–Uhlenbeck diffusion with rate `θ`; its unit
    /// time step skeleton is the AR(1) with `ρ = e^{−θ}`.
    Ou { theta: f64 },
    /// Markov chain whose consecutive pairs are bivariate Student-t with
    /// `ν` degrees of freedom and correlation `ρ_t`.
    TCopulaMarkov { nu: f64, rho_t: f64 },
    /// AR(1) multiplied by a periodic scale profile (cyclostationary).
    SeasonalScaledAr1 { rho: f64, scales: Vec<f64> },
}

/// A complete data-generating model: a latent dependence structure plus
/// the marginal distribution it is pushed through.
///
/// `marginal: None` means the observed scale *is* the latent scale
/// (standard-normal margins for Gaussian kinds, `t_ν` for the t copula,
/// phase-scaled normals for the seasonal kind).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessModel {
    #[serde(flatten)]
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marginal: Option<MarginalModel>,
}

impl ProcessModel {
    /// Build and validate a model.
    pub fn new(kind: ModelKind, marginal: Option<MarginalModel>) -> Result<Self> {
        let model = Self { kind, marginal };
        model.validate()?;
        Ok(model)
    }

    /// Check the parameter ranges of [`ModelKind`].
    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            ModelKind::Iid => {}
            ModelKind::GaussAr1 { theta } | ModelKind::Ou { theta } => {
                if !(*theta > 0.0 && theta.is_finite()) {
                    return Err(Error::Config(format!(
                        "AR(1)/OU rate theta must be positive, got {theta}"
                    )));
                }
            }
            ModelKind::GaussGeneral { zeta, eta, kappa } => {
                // Constructing the ACF validates the parameters.
                AcfFunction::algebraic(*zeta, *eta, *kappa)?;
            }
            ModelKind::TCopulaMarkov { nu, rho_t } => {
                if !(*nu > 2.0 && nu.is_finite()) {
                    return Err(Error::Config(format!(
                        "t-copula degrees of freedom must exceed 2, got {nu}"
                    )));
                }
                if !(rho_t.abs() < 1.0) {
                    return Err(Error::Config(format!(
                        "t-copula correlation must lie in (-1, 1), got {rho_t}"
                    )));
                }
            }
            ModelKind::SeasonalScaledAr1 { rho, scales } => {
                if !(rho.abs() < 1.0) {
                    return Err(Error::Config(format!(
                        "AR(1) correlation must lie in (-1, 1), got {rho}"
                    )));
                }
                if scales.is_empty() || scales.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
                    return Err(Error::Config(
                        "seasonal scale profile must be non-empty and positive".into(),
                    ));
                }
                if self.marginal.is_some() {
                    return Err(Error::Config(
                        "seasonal-scaled AR(1) is observed on its own scale; attaching a \
                         marginal is ambiguous"
                            .into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Simulate the latent (standardized) path: standard-normal margins
    /// for Gaussian kinds, `t_ν` for the t copula, `S_t · Z_t` for the
    /// seasonal kind.
    pub fn simulate_latent(&self, len: usize, seed: u64) -> Result<TimeSeries> {
        self.validate()?;
        match &self.kind {
            ModelKind::Iid => {
                let mut rng = SeededRng::new(seed);
                TimeSeries::new(rng.standard_normals(len))
            }
            ModelKind::GaussAr1 { theta } | ModelKind::Ou { theta } => {
                simulate_ar1((-theta).exp(), len, seed)
            }
            ModelKind::GaussGeneral { zeta, eta, kappa } => {
                simulate_gaussian_acf(&AcfFunction::algebraic(*zeta, *eta, *kappa)?, len, seed)
            }
            ModelKind::TCopulaMarkov { nu, rho_t } => simulate_t_markov(*nu, *rho_t, len, seed),
            ModelKind::SeasonalScaledAr1 { rho, scales } => {
                simulate_scaled_ar1(*rho, scales, len, seed)
            }
        }
    }

    /// Simulate with uniform margins: the latent path pushed through its
    /// own marginal CDF (`Φ`, `t_ν`, or the phase-wise `Φ(·/S_t)`).
    pub fn simulate_uniform(&self, len: usize, seed: u64) -> Result<TimeSeries> {
        let latent = self.simulate_latent(len, seed)?;
        let values: Vec<f64> = match &self.kind {
            ModelKind::TCopulaMarkov { nu, .. } => latent
                .values()
                .iter()
                .map(|&y| student_t_cdf(y, *nu))
                .collect(),
            ModelKind::SeasonalScaledAr1 { scales, .. } => latent
                .values()
                .iter()
                .enumerate()
                .map(|(t, &v)| normal_cdf(v / scales[t % scales.len()]))
                .collect(),
            _ => latent.values().iter().map(|&z| normal_cdf(z)).collect(),
        };
        TimeSeries::new(values)
    }

    /// Simulate on the observed scale: uniform margins pushed through the
    /// attached marginal's per-phase quantile function. Without a
    /// marginal the latent path *is* the observed path.
    pub fn simulate_observed(&self, len: usize, seed: u64) -> Result<TimeSeries> {
        match &self.marginal {
            None => self.simulate_latent(len, seed),
            Some(marginal) => {
                let u = self.simulate_uniform(len, seed)?;
                let values: Vec<f64> = u
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(t, &p)| marginal.quantile(t, p))
                    .collect();
                TimeSeries::new(values)
            }
        }
    }

    /// Serialize to the canonical JSON document `{kind, params, marginal}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parse and validate the canonical JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }
}

// ---- closed-form mean exceedance ----

/// Mean exceedance time of level `b` for IID draws from a Weibull
/// marginal: the waiting time is geometric with success probability
/// `ℙ(V > b)`, so `𝓔_b = 1/ℙ(V > b) − 1 = exp((b/λ)^k) − 1`.
///
/// `b ≤ 0` is below the support, every sample exceeds immediately, and the
/// mean is 0.
pub fn iid_mean_exceedance(marginal: &Weibull, b: f64) -> f64 {
    if b <= 0.0 {
        return 0.0;
    }
    (b / marginal.scale()).powf(marginal.shape()).exp_m1()
}

// ---- exceedance pair statistics ----

/// Counts over the consecutive pairs `(V_{t−1}, V_t)`, `t = 1..T`, of a
/// series against a fixed level `b`.
///
/// The exact identity `successors_above = upcrossings + both_above` holds
/// on every window (each above-`b` successor has a predecessor that is
/// either below — an upcrossing — or above). The analogous probability
/// identity is what relates the tail dependence `λ`, the upcrossing rate
/// `μ` and the exceedance probability `p` through `1 − λ = μ/p`; on a
/// finite window that form is exact precisely when the first and last
/// samples lie on the same side of `b` (otherwise the boundary pair breaks
/// the symmetry between predecessor and successor counts).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceedancePairCounts {
    /// Number of pairs, `T − 1`.
    pub pairs: usize,
    /// Pairs whose predecessor exceeds: `#{t ≥ 1: V_{t−1} > b}`.
    pub predecessors_above: usize,
    /// Pairs whose successor exceeds: `#{t ≥ 1: V_t > b}`.
    pub successors_above: usize,
    /// Pairs with both sides above `b`.
    pub both_above: usize,
    /// Upcrossings: predecessor ≤ b, successor > b.
    pub upcrossings: usize,
    /// Downcrossings: predecessor > b, successor ≤ b.
    pub downcrossings: usize,
}

/// Tally the consecutive-pair exceedance counts of `series` against `b`.
pub fn exceedance_pair_counts(series: &TimeSeries, b: f64) -> ExceedancePairCounts {
    let v = series.values();
    let mut counts = ExceedancePairCounts {
        pairs: v.len().saturating_sub(1),
        predecessors_above: 0,
        successors_above: 0,
        both_above: 0,
        upcrossings: 0,
        downcrossings: 0,
    };
    for t in 1..v.len() {
        let pred = v[t - 1] > b;
        let succ = v[t] > b;
        counts.predecessors_above += pred as usize;
        counts.successors_above += succ as usize;
        counts.both_above += (pred && succ) as usize;
        counts.upcrossings += (!pred && succ) as usize;
        counts.downcrossings += (pred && !succ) as usize;
    }
    debug_assert_eq!(
        counts.successors_above,
        counts.upcrossings + counts.both_above
    );
    counts
}

/// Empirical tail dependence `λ̂(V, b) = ℙ̂(V_t > b | V_{t−1} > b)`:
/// the fraction of above-`b` predecessors whose successor is also above.
///
/// Errors with [`Error::UndefinedStatistic`] when no predecessor exceeds
/// `b` (the conditioning event never occurs).
pub fn tail_dependence_estimate(series: &TimeSeries, b: f64) -> Result<f64> {
    let counts = exceedance_pair_counts(series, b);
    if counts.predecessors_above == 0 {
        return Err(Error::UndefinedStatistic(format!(
            "no sample before the last index exceeds {b}; tail dependence conditions on that event"
        )));
    }
    Ok(counts.both_above as f64 / counts.predecessors_above as f64)
}

/// Empirical upcrossing rate `μ̂(V, b) = ℙ̂(V_t > b, V_{t−1} ≤ b)`: the
/// number of below-to-above transitions divided by the number of pairs.
/// Returns 0 for windows with fewer than two samples (no pairs).
pub fn upcrossing_rate_estimate(series: &TimeSeries, b: f64) -> f64 {
    let counts = exceedance_pair_counts(series, b);
    if counts.pairs == 0 {
        return 0.0;
    }
    counts.upcrossings as f64 / counts.pairs as f64
}

/// Mean cluster size: runs of consecutive above-`b` samples and the
/// diagnostics of how they were delimited.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterSizeEstimate {
    /// Mean length of the complete runs.
    pub mean: f64,
    /// Number of complete runs (upcrossing followed by a downcrossing).
    pub complete_runs: usize,
    /// True when the window ended inside a run; that partial run is
    /// excluded from the mean (its final length is unknown).
    pub partial_final_run: bool,
}

/// Mean time spent above `b` per visit: the average length of runs of
/// consecutive above-`b` samples, where a run starts at an upcrossing and
/// ends at the next downcrossing.
///
/// An initial run already in progress at `t = 0` has no upcrossing and is
/// skipped; a final run still in progress at the window edge is censored
/// and excluded, flagged by `partial_final_run`. Errors with
/// [`Error::UndefinedStatistic`] if no run completes. When no run is
/// partial, the reciprocal of the mean equals the ratio of the upcrossing
/// rate to the fraction of above-`b` samples among `t ≥ 1` — exactly, at
/// the level of counts.
pub fn cluster_size_estimate(series: &TimeSeries, b: f64) -> Result<ClusterSizeEstimate> {
    let v = series.values();
    let mut total_length = 0usize;
    let mut complete_runs = 0usize;
    let mut current: Option<usize> = None; // length of the run in progress
    for t in 1..v.len() {
        let pred = v[t - 1] > b;
        let succ = v[t] > b;
        match (&mut current, pred, succ) {
            (None, false, true) => current = Some(1),
            (Some(len), true, true) => *len += 1,
            (Some(len), true, false) => {
                total_length += *len;
                complete_runs += 1;
                current = None;
            }
            _ => {}
        }
    }
    let partial_final_run = current.is_some();
    if complete_runs == 0 {
        return Err(Error::UndefinedStatistic(format!(
            "no complete above-{b} run (upcrossing followed by a downcrossing) in the window"
        )));
    }
    Ok(ClusterSizeEstimate {
        mean: total_length as f64 / complete_runs as f64,
        complete_runs,
        partial_final_run,
    })
}

/// Limiting tail dependence of the stationary t copula:
/// `λ = 2·t_{ν+1}(−√((ν+1)(1−ρ_t)/(1+ρ_t)))`.
///
/// This is the probability that the chain stays above an extreme quantile
/// for one more step, in the limit of the quantile level going to 1; it is
/// strictly positive for every `ν < ∞`, unlike any Gaussian copula.
pub fn t_copula_tail_dependence(nu: f64, rho_t: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::Config(format!(
            "degrees of freedom must be positive, got {nu}"
        )));
    }
    if !(rho_t.abs() < 1.0) {
        return Err(Error::Config(format!(
            "correlation must lie in (-1, 1), got {rho_t}"
        )));
    }
    let arg = -((nu + 1.0) * (1.0 - rho_t) / (1.0 + rho_t)).sqrt();
    Ok(2.0 * student_t_cdf(arg, nu + 1.0))
}

// ---- tests ----
