//! Deterministic random stream shared by every algorithm.
//!
//! All draws go through `f64` and are converted to the caller's scalar type
//! afterwards, so the underlying ChaCha stream advances identically whether
//! a run is instantiated with `f32` or `f64`. Every sampler below consumes a
//! fixed number of uniform draws (the Cauchy truncation loop in the adaptive
//! DEs is the one documented exception, and it is identical on every code
//! path that uses it).

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random stream with a platform-independent draw sequence.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in the open interval (0, 1).
    pub fn uniform<T: crate::Scalar>(&mut self) -> T {
        T::from_f64_c(self.rng.sample::<f64, _>(Open01))
    }

    /// Uniform draw in [lo, hi).
    pub fn uniform_in<T: crate::Scalar>(&mut self, lo: T, hi: T) -> T {
        let u: f64 = self.rng.gen::<f64>();
        lo + (hi - lo) * T::from_f64_c(u)
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.rng.gen_range(0..n)
    }

    /// Uniform integer in [0, n) distinct from every index in `exclude`.
    pub fn below_excluding(&mut self, n: usize, exclude: &[usize]) -> usize {
        debug_assert!(exclude.len() < n);
        loop {
            let candidate = self.below(n);
            if !exclude.contains(&candidate) {
                return candidate;
            }
        }
    }

    /// Standard normal via Box-Muller; consumes exactly two uniform draws.
    pub fn normal<T: crate::Scalar>(&mut self) -> T {
        let u1: f64 = self.rng.sample(Open01);
        let u2: f64 = self.rng.sample(Open01);
        let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        T::from_f64_c(z)
    }

    /// Cauchy(loc, scale) via inverse CDF; consumes exactly one uniform draw.
    pub fn cauchy<T: crate::Scalar>(&mut self, loc: T, scale: T) -> T {
        let u: f64 = self.rng.sample(Open01);
        loc + scale * T::from_f64_c((std::f64::consts::PI * (u - 0.5)).tan())
    }
}

/// Derive a per-cell seed from a master seed and two coordinates
/// (splitmix64 chain; stable across platforms and releases).
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut s = splitmix64(master ^ 0x9e37_79b9_7f4a_7c15);
    s = splitmix64(s ^ splitmix64(a.wrapping_add(0x1234_5678_9abc_def1)));
    s = splitmix64(s ^ splitmix64(b.wrapping_add(0x0fed_cba9_8765_4321)));
    s
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
