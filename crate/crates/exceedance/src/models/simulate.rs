//! Deterministic simulators for the reference processes.
//!
//! Every simulator is a pure function of `(parameters, length, seed)`:
//! the same arguments always produce the same path, across runs and
//! platforms, which is what makes common-random-number calibration and
//! reproducible experiments possible. All paths are stationary from the
//! first sample (no burn-in needed).

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numeric::student_t_quantile;
use crate::rng::SeededRng;
use crate::series::TimeSeries;

use super::AcfFunction;

/// Eigenvalues of the circulant embedding this much below zero (relative
/// to the largest) are treated as round-off and clamped; anything more
/// negative means the embedding genuinely fails and we fall back.
const SPECTRUM_ROUNDOFF: f64 = 1e-8;

/// Dense Cholesky fallback is quadratic in memory and cubic in time;
/// beyond this length it is not worth attempting.
const MAX_CHOLESKY_LEN: usize = 4096;

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::Config("simulation length must be positive".into()));
    }
    Ok(())
}

fn check_correlation(rho: f64, what: &str) -> Result<()> {
    if !(rho.abs() < 1.0) {
        return Err(Error::Config(format!(
            "{what} must lie in (-1, 1), got {rho}"
        )));
    }
    Ok(())
}

// ---- AR(1) ----

/// Stationary Gaussian AR(1): `V₀ ~ N(0,1)`,
/// `V_t = ρ V_{t−1} + √(1−ρ²) X_t` with `X_t` iid standard normal.
/// Every marginal is standard normal; the ACF is `ρ^t`.
pub fn simulate_ar1(rho: f64, len: usize, seed: u64) -> Result<TimeSeries> {
    check_len(len)?;
    check_correlation(rho, "AR(1) correlation")?;
    let mut rng = SeededRng::new(seed);
    let innovation_scale = (1.0 - rho * rho).sqrt();
    let mut values = Vec::with_capacity(len);
    let mut v = rng.standard_normal();
    values.push(v);
    for _ in 1..len {
        v = rho * v + innovation_scale * rng.standard_normal();
        values.push(v);
    }
    TimeSeries::new(values)
}

/// AR(1) multiplied by a periodic positive scale table:
/// `V_t = S_{t mod Y} · Z_t` with `Z` from [`simulate_ar1`].
///
/// With `scales = [1.0]` the output is bit-for-bit the [`simulate_ar1`]
/// stream for the same seed, so the scaled generator is a strict
/// generalization rather than a separate process.
pub fn simulate_scaled_ar1(rho: f64, scales: &[f64], len: usize, seed: u64) -> Result<TimeSeries> {
    if scales.is_empty() || scales.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return Err(Error::Config(
            "scale table must be non-empty, positive, and finite".into(),
        ));
    }
    let latent = simulate_ar1(rho, len, seed)?;
    let values: Vec<f64> = latent
        .values()
        .iter()
        .enumerate()
        .map(|(t, &z)| z * scales[t % scales.len()])
        .collect();
    TimeSeries::new(values)
}

/// The sinusoidal seasonal scale profile
/// `S_s = (1 + sin²(π (s + phase)/Y)) / 2`, tabulated over one period
/// `s = 0..Y`.
///
/// With `phase = 0` the profile starts at its minimum `S_0 = 1/2` and
/// peaks at `S_{Y/2} = 1`; a `phase` of `Y/2` starts it at the peak
/// instead. Requires `Y ≥ 2`.
pub fn seasonal_scale_profile(period: usize, phase: f64) -> Result<Vec<f64>> {
    if period < 2 {
        return Err(Error::Config(format!(
            "seasonal period must be at least 2, got {period}"
        )));
    }
    if !phase.is_finite() {
        return Err(Error::Config(format!("phase must be finite, got {phase}")));
    }
    Ok((0..period)
        .map(|s| {
            let x = std::f64::consts::PI * (s as f64 + phase) / period as f64;
            (1.0 + x.sin().powi(2)) / 2.0
        })
        .collect())
}

/// Cyclostationary AR(1): `V_t = Z_t · S_t` with `Z` from
/// [`simulate_ar1`] and `S` the sinusoidal profile of
/// [`seasonal_scale_profile`] at phase 0 (so `S_0 = 1/2`, peak 1 at
/// mid-period). `Y ≥ 2` is required.
pub fn simulate_seasonal_scaled_ar1(
    rho: f64,
    period: usize,
    len: usize,
    seed: u64,
) -> Result<TimeSeries> {
    let scales = seasonal_scale_profile(period, 0.0)?;
    simulate_scaled_ar1(rho, &scales, len, seed)
}

// ---- general Gaussian ACF ----

/// Stationary standard Gaussian path with the exact autocorrelation
/// function `acf`, by circulant embedding.
///
/// The covariance sequence `r_0..r_{T−1}` is reflected into a ring of
/// length `2T−2`; the ring's FFT gives the eigenvalues of the circulant
/// extension, and when they are non-negative, Gaussian noise shaped in
/// the frequency domain transforms back to a path whose covariance is
/// exactly `r_{|s−t|}` — no truncation error, `O(T log T)` time.
///
/// Slightly negative eigenvalues (within `1e-8` of the largest,
/// relatively) are clamped to zero as round-off. A genuinely negative
/// spectrum falls back to dense Cholesky factorization with escalating
/// diagonal jitter for `T ≤ 4096`; if that also fails, the covariance
/// sequence does not describe a stationary Gaussian process and the call
/// errors.
pub fn simulate_gaussian_acf(acf: &AcfFunction, len: usize, seed: u64) -> Result<TimeSeries> {
    check_len(len)?;
    if (acf.eval(0.0) - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "autocorrelation at lag 0 must be 1, got {}",
            acf.eval(0.0)
        )));
    }
    let mut r = Vec::with_capacity(len);
    for lag in 0..len {
        let v = acf.eval(lag as f64);
        if !v.is_finite() || v.abs() > 1.0 + 1e-12 {
            return Err(Error::Config(format!(
                "autocorrelation at lag {lag} is {v}, outside [-1, 1]"
            )));
        }
        r.push(v.clamp(-1.0, 1.0));
    }
    if len == 1 {
        let mut rng = SeededRng::new(seed);
        return TimeSeries::new(vec![rng.standard_normal()]);
    }

    // Symmetrized covariance ring of even length M = 2T−2: r_0..r_{T−1}
    // followed by the reflection r_{T−2}..r_1.
    let m = 2 * len - 2;
    let mut ring: Vec<Complex<f64>> = Vec::with_capacity(m);
    ring.extend(r.iter().map(|&v| Complex::new(v, 0.0)));
    ring.extend((len..m).map(|j| Complex::new(r[2 * len - 2 - j], 0.0)));

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut ring);

    // The ring is real and even, so the spectrum is real up to round-off.
    let mut lambda: Vec<f64> = ring.iter().map(|c| c.re).collect();
    let max_lambda = lambda.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let floor = -SPECTRUM_ROUNDOFF * max_lambda.max(1.0);
    if lambda.iter().any(|&l| l < floor) {
        return cholesky_gaussian_path(&r, seed);
    }
    for l in &mut lambda {
        if *l < 0.0 {
            *l = 0.0;
        }
    }

    // Shape complex white noise by sqrt(λ) with Hermitian symmetry so the
    // transform comes out real: real weights at the two self-conjugate
    // bins (0 and M/2), conjugate pairs elsewhere.
    let mut rng = SeededRng::new(seed);
    let half = m / 2;
    let mut w = vec![Complex::new(0.0, 0.0); m];
    w[0] = Complex::new((lambda[0] / m as f64).sqrt() * rng.standard_normal(), 0.0);
    w[half] = Complex::new(
        (lambda[half] / m as f64).sqrt() * rng.standard_normal(),
        0.0,
    );
    for k in 1..half {
        let sigma = (lambda[k] / (2.0 * m as f64)).sqrt();
        let a = rng.standard_normal();
        let b = rng.standard_normal();
        w[k] = Complex::new(sigma * a, sigma * b);
        w[m - k] = w[k].conj();
    }
    fft.process(&mut w);
    TimeSeries::new(w[..len].iter().map(|c| c.re).collect())
}

/// Dense fallback: factor the full Toeplitz covariance matrix and shape
/// iid normals with the lower-triangular factor. Escalating diagonal
/// jitter absorbs small indefiniteness; real indefiniteness errors.
fn cholesky_gaussian_path(r: &[f64], seed: u64) -> Result<TimeSeries> {
    let n = r.len();
    if n > MAX_CHOLESKY_LEN {
        return Err(Error::Numeric(format!(
            "covariance sequence has no valid circulant embedding and is too long \
             ({n} > {MAX_CHOLESKY_LEN}) for dense factorization"
        )));
    }
    let chol = 'found: {
        for jitter in [0.0, 1e-12, 1e-10, 1e-8] {
            if let Some(l) = cholesky_toeplitz(r, jitter) {
                break 'found l;
            }
        }
        return Err(Error::Numeric(
            "covariance sequence is not positive semi-definite: circulant embedding and \
             jittered Cholesky factorization both failed"
                .into(),
        ));
    };
    let mut rng = SeededRng::new(seed);
    let g = rng.standard_normals(n);
    let mut values = vec![0.0; n];
    for i in 0..n {
        let row = &chol[i * (i + 1) / 2..(i + 1) * (i + 2) / 2];
        values[i] = row.iter().zip(&g).map(|(l, x)| l * x).sum();
    }
    TimeSeries::new(values)
}

/// Packed lower-triangular Cholesky factor of the Toeplitz matrix
/// `Σ_{ij} = r_{|i−j|} + jitter·𝟙(i=j)`, or `None` if a pivot fails.
fn cholesky_toeplitz(r: &[f64], jitter: f64) -> Option<Vec<f64>> {
    let n = r.len();
    let mut l = vec![0.0_f64; n * (n + 1) / 2];
    let idx = |i: usize, j: usize| i * (i + 1) / 2 + j;
    for i in 0..n {
        for j in 0..=i {
            let mut sum = r[i - j] + if i == j { jitter } else { 0.0 };
            for k in 0..j {
                sum -= l[idx(i, k)] * l[idx(j, k)];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[idx(i, j)] = sum.sqrt();
            } else {
                l[idx(i, j)] = sum / l[idx(j, j)];
            }
        }
    }
    Some(l)
}

// ---- t-copula Markov chain ----

/// Stationary Markov chain whose consecutive pairs `(Y_t, Y_{t+1})` are
/// bivariate Student-t with `ν` degrees of freedom and correlation
/// `ρ_t`; every marginal is `t_ν`.
///
/// `Y₀` is drawn by inverting the `t_ν` CDF on one uniform; each later
/// step inverts the `t_{ν+1}` CDF on exactly one uniform and applies the
/// conditional location `ρ_t y` and scale
/// `√((ν + y²)(1 − ρ_t²)/(ν + 1))`. One uniform per sample is a hard
/// contract: a calibration run that replays the same seed reproduces
/// this stream bit for bit.
///
/// At `ρ_t = 0` consecutive samples are uncorrelated with `t_ν`
/// margins (for the t family, uncorrelated is weaker than independent:
/// the conditional scale still reacts to `|y|`).
pub fn simulate_t_markov(nu: f64, rho_t: f64, len: usize, seed: u64) -> Result<TimeSeries> {
    check_len(len)?;
    if !(nu > 2.0 && nu.is_finite()) {
        return Err(Error::Config(format!(
            "t-copula degrees of freedom must exceed 2, got {nu}"
        )));
    }
    check_correlation(rho_t, "t-copula correlation")?;
    let mut rng = SeededRng::new(seed);
    let mut values = Vec::with_capacity(len);
    let mut y = student_t_quantile(rng.uniform_open(), nu);
    values.push(y);
    let corr_factor = (1.0 - rho_t * rho_t) / (nu + 1.0);
    for _ in 1..len {
        let shock = student_t_quantile(rng.uniform_open(), nu + 1.0);
        let scale = ((nu + y * y) * corr_factor).sqrt();
        y = rho_t * y + scale * shock;
        values.push(y);
    }
    TimeSeries::new(values)
}

// ---- tests ----
