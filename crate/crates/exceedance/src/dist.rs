//! Weibull marginal distribution and its normal-score transforms.
//!
//! The Weibull with scale `λ` and shape `k` has `sf(x) = exp(-(x/λ)^k)`.
//! It is the marginal of record throughout this crate: simulated processes
//! are built as transformed Gaussian (or Student-t) series `V_t = g(Z_t)`
//! with `g = F⁻¹ ∘ Φ`, so the transforms between Weibull values and normal
//! scores must stay accurate deep into the upper tail. [`Weibull::from_normal`]
//! therefore routes through `ln Φ̄` (never `1 - Φ`), and
//! [`Weibull::to_normal`] through the survival quantile; both survive
//! arguments where the naive compositions round to the boundary.

use crate::error::{Error, Result};
use crate::numeric::{ln_normal_sf, normal_cdf, normal_quantile};
use crate::rng::SeededRng;
use statrs::function::gamma::gamma;

/// Two-parameter Weibull distribution (scale `λ`, shape `k`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weibull {
    scale: f64,
    shape: f64,
}

impl Weibull {
    /// New distribution; both parameters must be finite and positive.
    pub fn new(scale: f64, shape: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Config(format!(
                "weibull scale must be finite and positive, got {scale}"
            )));
        }
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::Config(format!(
                "weibull shape must be finite and positive, got {shape}"
            )));
        }
        Ok(Self { scale, shape })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// `P(X ≤ x)`; zero for `x ≤ 0`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            // -expm1(-(x/λ)^k) keeps accuracy for small x.
            -(-(x / self.scale).powf(self.shape)).exp_m1()
        }
    }

    /// `P(X > x) = exp(-(x/λ)^k)`; one for `x ≤ 0`.
    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-(x / self.scale).powf(self.shape)).exp()
        }
    }

    /// Quantile `F⁻¹(p)` for `p ∈ [0, 1)`.
    ///
    /// Uses `-ln(1-p)` via `ln_1p` so small `p` keep full accuracy.
    pub fn quantile(&self, p: f64) -> f64 {
        assert!((0.0..1.0).contains(&p), "weibull quantile domain: p = {p}");
        self.scale * (-(-p).ln_1p()).powf(1.0 / self.shape)
    }

    /// Mean `λ Γ(1 + 1/k)`.
    pub fn mean(&self) -> f64 {
        self.scale * gamma(1.0 + 1.0 / self.shape)
    }

    /// Variance `λ² (Γ(1 + 2/k) - Γ(1 + 1/k)²)`.
    pub fn variance(&self) -> f64 {
        let g1 = gamma(1.0 + 1.0 / self.shape);
        let g2 = gamma(1.0 + 2.0 / self.shape);
        self.scale * self.scale * (g2 - g1 * g1)
    }

    /// One draw by inversion on the survival side: `λ (-ln U)^{1/k}` with
    /// `U` uniform on `(0, 1)`. Consumes exactly one uniform.
    pub fn sample(&self, rng: &mut SeededRng) -> f64 {
        self.scale * (-rng.uniform_open().ln()).powf(1.0 / self.shape)
    }

    /// Normal score of `x`: the `z` with `Φ(z) = F(x)`.
    ///
    /// Routed through whichever tail probability is small — `Φ⁻¹(cdf)`
    /// below the median, `-Φ⁻¹(sf)` above — so the score keeps relative
    /// accuracy deep into both tails. Returns `-∞` for `x ≤ 0` (the
    /// support boundary).
    pub fn to_normal(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let p = self.cdf(x);
        if p <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if p < 0.5 {
            return normal_quantile(p);
        }
        let s = self.sf(x);
        if s <= 0.0 {
            f64::INFINITY
        } else {
            -normal_quantile(s)
        }
    }

    /// Value whose normal score is `z`: `F⁻¹(Φ(z))`.
    ///
    /// For `z ≥ 0` it solves `(x/λ)^k = -ln Φ̄(z)` through [`ln_normal_sf`],
    /// keeping full relative accuracy far beyond where `Φ(z)` rounds to 1;
    /// for `z < 0` it goes through the (small, exactly representable)
    /// lower-tail probability instead.
    pub fn from_normal(&self, z: f64) -> f64 {
        if z == f64::NEG_INFINITY {
            return 0.0;
        }
        if z < 0.0 {
            self.quantile(normal_cdf(z))
        } else {
            self.scale * (-ln_normal_sf(z)).powf(1.0 / self.shape)
        }
    }

    /// Normal score of the threshold `b` under this marginal — the level a
    /// standard Gaussian driver must exceed for `g(Z) > b`.
    pub fn threshold_normal_score(&self, b: f64) -> f64 {
        self.to_normal(b)
    }
}
