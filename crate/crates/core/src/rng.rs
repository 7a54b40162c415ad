//! Seedable random source and deterministic seed derivation.
//!
//! Every run, round, process and trial owns its own [`RandomSource`]. Child
//! seeds are derived from a parent seed and an index with SplitMix64 mixing,
//! so the whole experiment tree is a pure function of the master seed.

use rand::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Name of the generator algorithm, recorded in run metadata.
pub const GENERATOR_NAME: &str = "xoshiro256++ (seeded via SplitMix64)";

/// A seeded xoshiro256++ stream.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    inner: Xoshiro256PlusPlus,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// The seed this source was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh, independent source for sub-task `index` of this source's seed.
    /// Does not touch this source's stream.
    pub fn child(&self, index: u64) -> RandomSource {
        RandomSource::new(derive_seed(self.seed, index))
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A standard normal variate (ziggurat method, exact distribution).
    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of child `index` from `parent`.
///
/// `splitmix64(parent ^ splitmix64(index))`; distinct indices give
/// statistically unrelated streams.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    splitmix64(parent ^ splitmix64(index))
}
