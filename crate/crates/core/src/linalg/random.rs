use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

/// Deterministic random stream seeded by a 64-bit value.
///
/// Identical seeds produce identical draw sequences.  Independent trials
/// should each use [`RandomSource::child`], which derives a stream from
/// `(seed, index)` so results do not depend on trial execution order.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// Stream 0 for the given seed.
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream `index + 1` for the same seed (stream 0 is the
    /// parent itself).
    pub fn child(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        Self { seed: self.seed, rng }
    }

    /// The seed this source (and all of its children) was built from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circularly-symmetric complex Gaussian with unit total variance
    /// (variance 1/2 per real component); real part drawn first.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Uniform draw from `0..n`.
    pub fn uniform_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// An `n x m` channel realization with i.i.d. unit-variance complex Gaussian
/// entries, drawn in column-major order.
pub fn sample_channel(n: usize, m: usize, rng: &mut RandomSource) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, m, |_, _| rng.complex_gaussian())
}
