//! Seeded random streams with a stability contract.
//!
//! Every stochastic routine in this crate takes its randomness through
//! [`SeededRng`], a ChaCha8 stream seeded from a `u64`. The contract is:
//! the same seed yields the same uniform stream on every platform and
//! every run, and derived draws (normals, Student-t steps, model paths)
//! consume a documented number of uniforms per step so simulations are
//! reproducible down to the bit. Tests freeze a few uniforms from known
//! seeds to catch accidental contract changes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Deterministic random stream; cheap to clone and fork.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    /// Stream seeded from a single word.
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A stream for an independent substask, derived from this seed and a
    /// stream index. Forking with distinct indices yields streams that do
    /// not overlap with each other or with the parent.
    pub fn fork(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { inner }
    }

    /// Uniform draw on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random()
    }

    /// Uniform draw on the open interval `(0, 1)` — safe to pass through
    /// quantile functions that diverge at the endpoints.
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Standard normal draw (one per call; consumes a fixed number of
    /// stream words via the ziggurat sampler).
    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Fill with independent standard normals.
    pub fn standard_normals(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.standard_normal()).collect()
    }

    /// Access the raw RNG for samplers that need it directly.
    pub fn raw(&mut self) -> &mut ChaCha8Rng {
        &mut self.inner
    }
}
