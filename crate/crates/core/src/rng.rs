//! Portable, seeded randomness.
//!
//! Runs draw from ChaCha8 keyed through `SeedableRng::seed_from_u64`. Uniform
//! variates take the top 53 bits of each `u64`, so the stream of `f64`
//! values is the same on every platform and independent of any distribution
//! code in `rand`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier written into run metadata.
pub const PRNG_ID: &str = "chacha8/rand_chacha-0.9/seed_from_u64/u53";

#[derive(Debug, Clone)]
pub struct SimRng(ChaCha8Rng);

impl SimRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[lo, hi]` (the upper end is reached only up to rounding).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of replicate `index` in an ensemble rooted at `base`.
///
/// Depends only on `(base, index)`, so every grid cell of a sweep sees the
/// same factor-price paths and growing the grid never moves existing streams.
pub fn replicate_seed(base: u64, index: u64) -> u64 {
    mix64(mix64(base) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}
