//! Seeded, stream-splittable random number generation.
//!
//! Every stochastic operation in this crate draws from an explicit
//! [`RngStream`]; fixing the `(seed, stream)` pair fixes every output bit
//! for bit. Distinct stream ids select distinct ChaCha nonces, so derived
//! streams are statistically independent of each other and of their parent.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::ComplexVector;
use crate::{Error, Result};

/// A reproducible random stream identified by a `(seed, stream)` pair.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A fresh stream with the same seed and a stream id mixed from this
    /// stream's id and `tag`. Independent of the parent and of siblings
    /// derived with different tags; does not consume parent draws.
    pub fn derive(&self, tag: u64) -> RngStream {
        RngStream::new(self.seed, mix(self.stream, tag))
    }

    /// Two independent standard normal draws (Box-Muller).
    pub fn standard_normal_pair(&mut self) -> (f64, f64) {
        let u1: f64 = self.rng.gen();
        let u2: f64 = self.rng.gen();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// One circularly-symmetric complex Gaussian draw with total variance
    /// `variance` (so `variance / 2` per real component).
    pub fn complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let u1: f64 = self.rng.gen();
        let u2: f64 = self.rng.gen();
        let r = (-variance * (1.0 - u1).ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        Complex64::from_polar(r, theta)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            items.swap(i, j);
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// SplitMix64 finalizer; spreads `(stream, tag)` over the id space so
/// derived streams never collide for distinct tags.
fn mix(stream: u64, tag: u64) -> u64 {
    let mut z = stream
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(tag)
        .wrapping_add(0x2545_f491_4f6c_dd1d);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Samples `n` independent complex Gaussian entries, each with zero mean and
/// per-entry complex variance `variance` (real and imaginary parts each carry
/// `variance / 2`).
pub fn sample_complex_gaussian(
    rng: &mut RngStream,
    n: usize,
    variance: f64,
) -> Result<ComplexVector> {
    if variance < 0.0 {
        return Err(Error::invalid(format!(
            "noise variance must be nonnegative, got {variance}"
        )));
    }
    Ok(ComplexVector::from_fn(n, |_| rng.complex_gaussian(variance)))
}
