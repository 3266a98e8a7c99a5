//! Reproducible parallel Monte Carlo.
//!
//! Samples are cut into fixed-size blocks; block `i` draws from ChaCha
//! stream `i` of the run seed, and block partial sums are combined in block
//! order. The result is therefore a function of `(seed, samples)` alone,
//! bitwise identical for every worker count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::quad::KahanSum;

pub const BLOCK_SIZE: usize = 4096;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct McSummary {
    pub mean: f64,
    /// Sample standard deviation divided by `√samples`.
    pub stderr: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Default)]
struct Partial {
    sum: KahanSum,
    sq: KahanSum,
}

pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `f` once per sample; `f` draws whatever randomness it needs from
/// the block generator it is handed.
pub fn run<F>(samples: usize, seed: u64, workers: usize, f: F) -> McSummary
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    assert!(samples > 0, "Monte Carlo needs at least one sample");
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let one_block = |b: usize| {
        let mut rng = block_rng(seed, b as u64);
        let count = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
        let mut part = Partial::default();
        for _ in 0..count {
            let x = f(&mut rng);
            part.sum.add(x);
            part.sq.add(x * x);
        }
        part
    };
    let parts: Vec<Partial> = if workers <= 1 {
        (0..blocks).map(one_block).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| (0..blocks).into_par_iter().map(one_block).collect())
    };
    let mut sum = KahanSum::new();
    let mut sq = KahanSum::new();
    for p in &parts {
        sum.add(p.sum.value());
        sq.add(p.sq.value());
    }
    let n = samples as f64;
    let mean = sum.value() / n;
    let var = if samples > 1 {
        ((sq.value() - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    McSummary {
        mean,
        stderr: (var / n).sqrt(),
        samples,
    }
}
