//! Reproducible uniform sampling on the torus.
//!
//! The sample index range is cut into chunks of [`CHUNK`] draws. Chunk `k` of a run
//! with seed `s` draws from a SplitMix64 generator whose state starts at
//! `s XOR h(k)`, where `h(k)` is the first SplitMix64 output from state `k`. Each
//! step adds `0x9E3779B97F4A7C15` and mixes with the multipliers
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`. Offsetting chunk states by the
//! step constant itself would make chunk `k` replay chunk 0 shifted by `k` draws. A
//! coordinate is `(next_u64 >> 11) · 2⁻⁵³`, first `x1` then `x2`. Results are
//! therefore independent of how chunks are scheduled across threads.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

pub const CHUNK: usize = 1 << 14;

pub fn chunk_rng(seed: u64, chunk: u64) -> SplitMix64 {
    let offset = SplitMix64::seed_from_u64(chunk).next_u64();
    SplitMix64::seed_from_u64(seed ^ offset)
}

#[inline]
pub fn uniform_xy<R: Rng>(rng: &mut R) -> [f64; 2] {
    let x1: f64 = rng.gen();
    let x2: f64 = rng.gen();
    [x1, x2]
}

/// Calls `visit` on every sample of chunk `k`, in order.
pub fn for_chunk(seed: u64, chunk: usize, samples: usize, mut visit: impl FnMut([f64; 2])) {
    let start = chunk * CHUNK;
    let len = CHUNK.min(samples - start);
    let mut rng = chunk_rng(seed, chunk as u64);
    for _ in 0..len {
        visit(uniform_xy(&mut rng));
    }
}

pub fn chunk_count(samples: usize) -> usize {
    samples.div_ceil(CHUNK)
}

/// Number of the `samples` uniform points satisfying `pred`.
pub fn par_count<P>(samples: usize, seed: u64, pred: P) -> u64
where
    P: Fn([f64; 2]) -> bool + Sync,
{
    (0..chunk_count(samples))
        .into_par_iter()
        .map(|k| {
            let mut hits = 0u64;
            for_chunk(seed, k, samples, |x| hits += u64::from(pred(x)));
            hits
        })
        .sum()
}

/// The first `samples` points of the stream, in order.
pub fn points(samples: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(samples);
    for k in 0..chunk_count(samples) {
        for_chunk(seed, k, samples, |x| out.push(x));
    }
    out
}
