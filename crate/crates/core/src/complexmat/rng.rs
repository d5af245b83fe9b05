//! Seed derivation and Gaussian sampling.
//!
//! A [`SeedTree`] node is a 64-bit key; children are derived by mixing a
//! label (or an index) into the parent key, so any trial can be regenerated
//! from `(base seed, labels…, trial index)` without replaying earlier
//! trials. Each leaf feeds a ChaCha8 stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedTree(u64);

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl SeedTree {
    pub fn new(seed: u64) -> Self {
        Self(splitmix(seed))
    }

    pub fn key(&self) -> u64 {
        self.0
    }

    pub fn child(&self, label: &str) -> Self {
        Self(splitmix(self.0 ^ fnv1a(label.as_bytes())))
    }

    pub fn index(&self, i: u64) -> Self {
        Self(splitmix(self.0.rotate_left(17) ^ splitmix(i)))
    }

    pub fn rng(&self) -> TrialRng {
        TrialRng {
            inner: ChaCha8Rng::seed_from_u64(self.0),
            spare: None,
        }
    }
}

/// Random stream with Box–Muller Gaussians.
pub struct TrialRng {
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl TrialRng {
    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.inner.random::<bool>()
    }

    /// Standard normal variate.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.gaussian() * s, self.gaussian() * s)
    }

    pub fn gaussian_vector(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.complex_gaussian()).collect()
    }

    /// Uniformly distributed unit vector in `ℂ^n`.
    pub fn unit_vector(&mut self, n: usize) -> Vec<C64> {
        loop {
            let v = self.gaussian_vector(n);
            let norm = super::matrix::vec_norm(&v);
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    pub fn unimodular(&mut self) -> C64 {
        C64::from_polar(1.0, std::f64::consts::TAU * self.uniform())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn children_are_reproducible_and_distinct() {
        let root = SeedTree::new(42);
        assert_eq!(root.child("a").index(3), SeedTree::new(42).child("a").index(3));
        assert_ne!(root.child("a"), root.child("b"));
        assert_ne!(root.index(0), root.index(1));
        assert_ne!(root.child("a").index(1), root.child("b").index(1));
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut rng = SeedTree::new(7).rng();
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.gaussian()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut rng = SeedTree::new(1).rng();
        for n in 1..6 {
            let v = rng.unit_vector(n);
            assert!((super::super::matrix::vec_norm(&v) - 1.0).abs() < 1e-14);
        }
    }
}
