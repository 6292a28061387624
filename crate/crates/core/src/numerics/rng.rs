use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::math;

/// A reproducible random stream addressed by `(master_seed, stream_index)`.
///
/// The generator is ChaCha20 keyed by `SeedableRng::seed_from_u64(master_seed)`
/// with its 64-bit stream id set to `stream_index`. Distinct indices select
/// disjoint keystreams, so a simulation that gives every replication its own
/// index produces the same numbers whatever order or thread runs it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    pub fn generator(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }

    pub fn uniforms(&self) -> Uniforms {
        Uniforms { rng: self.generator() }
    }

    pub fn gaussians(&self) -> GaussianStream {
        GaussianStream { uniforms: self.uniforms(), spare: None }
    }
}

/// Uniform deviates on `[0, 1)` with 53 random bits each.
#[derive(Debug, Clone)]
pub struct Uniforms {
    rng: ChaCha20Rng,
}

impl Iterator for Uniforms {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        Some((self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64))
    }
}

/// Standard normal deviates by the Box-Muller transform.
///
/// Each pair of uniforms `(u1, u2)` yields `r cos(2 pi u2)` then
/// `r sin(2 pi u2)` with `r = sqrt(-2 ln(1 - u1))`, evaluated with `libm` so
/// the sequence is bit-identical on every platform.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    uniforms: Uniforms,
    spare: Option<f64>,
}

impl Iterator for GaussianStream {
    type Item = f64;

    #[inline]
    fn next(&mut self) -> Option<f64> {
        if let Some(z) = self.spare.take() {
            return Some(z);
        }
        let u1 = self.uniforms.next()?;
        let u2 = self.uniforms.next()?;
        let r = math::sqrt(-2.0 * math::ln(1.0 - u1));
        let angle = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * math::sin(angle));
        Some(r * math::cos(angle))
    }
}
