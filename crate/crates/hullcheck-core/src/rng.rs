//! Deterministic sampling streams for generators and probes.
//!
//! The raw 64-bit stream is splitmix64 (via `rand_xoshiro::SplitMix64`), seeded
//! so the seed IS the initial state. Every derived draw is specified exactly so
//! the stream can be reproduced in any language:
//!
//! * `next_u64`: one splitmix64 step
//!   (`state += 0x9E3779B97F4A7C15`; `z = state`;
//!   `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`;
//!   `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`; return `z ^ (z >> 31)`).
//! * `next_f64`: `(next_u64 >> 11) * 2^-53`, uniform on `[0, 1)`.
//! * `next_gaussian`: Box–Muller on two uniforms (`u1` redrawn until nonzero);
//!   returns `sqrt(-2 ln u1) * cos(2 pi u2)` first, its sine partner second.
//! * `dirichlet_uniform(n)`: `n` exponentials `-ln(1 - u)` normalized to sum 1
//!   (uniform over the probability simplex).

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// A seeded deterministic stream of numbers.
#[derive(Clone, Debug)]
pub struct Stream {
    rng: SplitMix64,
    cached_gaussian: Option<f64>,
}

impl Stream {
    /// Creates a stream whose internal splitmix64 state starts at `seed`.
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::from_seed(seed.to_le_bytes()),
            cached_gaussian: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `[lo, hi)`.
    #[inline]
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer draw from `[0, n)` by scaling (adequate for small `n`).
    #[inline]
    pub fn next_index(&mut self, n: usize) -> usize {
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }

    /// Standard normal draw (Box–Muller; pairs are cached).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(g) = self.cached_gaussian.take() {
            return g;
        }
        let mut u1 = self.next_f64();
        while u1 == 0.0 {
            u1 = self.next_f64();
        }
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.cached_gaussian = Some(r * s);
        r * c
    }

    /// A point with independent standard-normal coordinates.
    pub fn next_gaussian_point(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.next_gaussian()).collect()
    }

    /// Uniform draw from the probability simplex with `n` vertices
    /// (normalized unit exponentials).
    pub fn dirichlet_uniform(&mut self, n: usize) -> Vec<f64> {
        assert!(n >= 1);
        let mut w: Vec<f64> = (0..n).map(|_| -(1.0 - self.next_f64()).ln()).collect();
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            for x in w.iter_mut() {
                *x /= total;
            }
        } else {
            // all-zero exponentials cannot happen with nonzero probability,
            // but keep the output a valid simplex point regardless
            w = vec![1.0 / n as f64; n];
        }
        w
    }
}
