//! Seeded Monte Carlo driver.
//!
//! Trials are cut into fixed-size chunks; chunk `c` draws from the ChaCha
//! stream `c` of the caller's seed. Chunk results are merged in chunk order,
//! so the answer does not depend on how rayon schedules the work.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) const CHUNK_TRIALS: u64 = 1 << 14;

pub(crate) fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Run `trials` trials and fold the per-chunk results left to right.
pub(crate) fn run_chunked<A, Work, Merge>(trials: u64, seed: u64, work: Work, merge: Merge) -> Option<A>
where
    A: Send,
    Work: Fn(&mut ChaCha8Rng, u64) -> A + Sync,
    Merge: Fn(A, A) -> A,
{
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let parts: Vec<A> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            work(&mut chunk_rng(seed, c), count)
        })
        .collect();
    parts.into_iter().reduce(merge)
}
