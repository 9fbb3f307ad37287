//! Seeded, chunked Monte Carlo plumbing.
//!
//! Samples are split into fixed-size chunks. Chunk `i` draws from a ChaCha8
//! stream seeded with the user seed and stream id `i`, and per-chunk results
//! are merged in chunk order. A given `(seed, samples)` pair therefore yields
//! bit-identical output under both sequential and parallel execution.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::par::Execution;

pub const CHUNK_SIZE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub samples: u64,
    pub seed: u64,
    pub execution: Execution,
}

impl MonteCarlo {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed, execution: Execution::default() }
    }

    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn chunk_count(&self) -> usize {
        self.samples.div_ceil(CHUNK_SIZE) as usize
    }

    fn chunk_len(&self, index: usize) -> usize {
        let start = index as u64 * CHUNK_SIZE;
        (self.samples - start).min(CHUNK_SIZE) as usize
    }

    /// Runs `f(rng, len)` once per chunk and returns the chunk results in
    /// order.
    pub fn run_chunks<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng, usize) -> T + Sync + Send,
    {
        self.execution.map_indexed(self.chunk_count(), |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(i as u64);
            f(&mut rng, self.chunk_len(i))
        })
    }
}

/// Streaming mean and variance (Welford), mergeable across chunks.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Uniform direction on the unit sphere `S^(n-1)` by Gaussian normalization.
pub fn sample_unit_sphere<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
            norm2 += *x * *x;
        }
        if norm2 > 0.0 {
            let inv = 1.0 / norm2.sqrt();
            out.iter_mut().for_each(|x| *x *= inv);
            return;
        }
    }
}

/// Uniform point in the closed unit ball: direction times `U^(1/n)`.
pub fn sample_unit_ball<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    sample_unit_sphere(rng, out);
    let r = rng.random::<f64>().powf(1.0 / out.len() as f64);
    out.iter_mut().for_each(|x| *x *= r);
}

/// Uniform point in the axis-aligned box `[lower, upper)`.
pub fn sample_box<R: Rng + ?Sized>(rng: &mut R, lower: &[f64], upper: &[f64], out: &mut [f64]) {
    for ((x, lo), hi) in out.iter_mut().zip(lower).zip(upper) {
        *x = lo + (hi - lo) * rng.random::<f64>();
    }
}
