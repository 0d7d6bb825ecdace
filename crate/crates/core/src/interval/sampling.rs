//! Seeded, thread-count independent random streams.

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::system::SequenceCache;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `[0, bound)` by rejection on `bound.bits()`-wide strings.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(*bound > BigUint::default(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let spare = (words as u64) * 32 - bits;
    let mut data = vec![0u32; words];
    loop {
        for w in data.iter_mut() {
            *w = rng.next_u32();
        }
        if spare > 0 {
            data[words - 1] >>= spare;
        }
        let v = BigUint::from_slice(&data);
        if v < *bound {
            return v;
        }
    }
}

/// Uniform `m` in `[G_n, G_{n+1})`; the cache must hold `G_{n+1}`.
pub fn sample_ambient<R: RngCore + ?Sized>(rng: &mut R, cache: &SequenceCache, n: usize) -> BigUint {
    let lo = cache.at(n);
    let width = cache.at(n + 1) - lo;
    lo + uniform_below(rng, &width)
}

/// Runs `job` for chunk indices `0..chunks` on a pool of `threads` workers and
/// returns the results in chunk order.
pub(crate) fn run_chunks<T, F>(threads: usize, chunks: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    use rayon::prelude::*;
    if threads <= 1 {
        return (0..chunks).map(job).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| (0..chunks).into_par_iter().map(&job).collect())
}
