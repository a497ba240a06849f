//! Seeded randomness.
//!
//! Every stochastic routine in this crate takes a `u64` master seed and
//! derives independent ChaCha streams from it. Stream k of a given seed is
//! the same byte sequence no matter how many other streams were consumed, so
//! per-replica work can be scheduled serially or in parallel without changing
//! results.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Factory for independent substreams of one master seed.
#[derive(Clone, Copy, Debug)]
pub struct Streams {
    seed: u64,
}

impl Streams {
    pub fn new(seed: u64) -> Self {
        Streams { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Substream `index`; streams with distinct indices never overlap.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Uniform f64 in [0, 1) with 53 random bits.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform index in [0, n). Rejection sampling, no modulo bias.
pub fn uniform_index(rng: &mut impl RngCore, n: usize) -> usize {
    debug_assert!(n > 0);
    let n = n as u64;
    // largest multiple of n that fits in u64
    let zone = u64::MAX - (u64::MAX % n);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return (v % n) as usize;
        }
    }
}

/// Standard normal draw, Box-Muller. Two uniforms per call; the second
/// variate is discarded to keep the draw count predictable.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = 1.0 - uniform(rng); // (0, 1]: keeps the log finite
    let u2 = uniform(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// In-place Fisher-Yates shuffle.
pub fn shuffle<T>(rng: &mut impl RngCore, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = uniform_index(rng, i + 1);
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn streams_are_independent_of_consumption_order() {
        let s = Streams::new(42);
        let mut a = s.stream(3);
        let direct: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();

        // consume other streams first; stream 3 must not move
        let mut b0 = s.stream(0);
        b0.next_u64();
        let mut b = s.stream(3);
        let later: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        assert_eq!(direct, later);
    }

    #[test]
    fn distinct_streams_differ() {
        let s = Streams::new(7);
        assert_ne!(s.stream(0).next_u64(), s.stream(1).next_u64());
    }

    #[test]
    fn uniform_index_covers_range_without_bias_artifacts() {
        let mut rng = Streams::new(1).stream(0);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            seen[uniform_index(&mut rng, 7)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn standard_normal_moments() {
        let mut rng = Streams::new(9).stream(0);
        let n = 200_000;
        let (mut sum, mut sum2) = (0.0, 0.0);
        for _ in 0..n {
            let z = standard_normal(&mut rng);
            sum += z;
            sum2 += z * z;
        }
        let mean = sum / n as f64;
        let var = sum2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut rng = Streams::new(5).stream(0);
        let mut v: Vec<u32> = (0..50).collect();
        shuffle(&mut rng, &mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        let expect: Vec<u32> = (0..50).collect();
        assert_eq!(sorted, expect);
        assert_ne!(v, expect, "50 elements staying put is astronomically unlikely");
    }
}
