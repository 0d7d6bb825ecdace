//! An interval on which the summand count is far from normal.
//!
//! Below `X = G_{2n} + G_{n+1}` the integers `G_{2n} + G_n + G_{n-2} + ...`
//! carry about `n/2` summands, while `X` itself carries two. An interval
//! straddling `X` therefore mixes two well separated populations.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::blocks::{block_split, has_zero_run};
use super::distribution::exact_interval_histogram;
use super::sampling::{sample_ambient, stream_rng};
use super::{IntervalError, IntervalParams};
use crate::decomposition::decompose_in;
use crate::stats::DistributionSummary;
use crate::system::SequenceCache;

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    /// `floor(n^(1/4))`, the lowest index used.
    pub cut: usize,
    #[serde(serialize_with = "ser_decimal")]
    pub lo: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub hi: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub length: BigUint,
    pub distribution: DistributionSummary,
}

/// `[G_{2n} + G_n + G_{n-2} + ... + G_j, G_{2n} + G_{n+1} + G_cut)` where the
/// alternating sum stops at the last index `j >= cut = floor(n^(1/4))`.
pub fn counterexample_interval(cache: &mut SequenceCache, n: usize) -> Result<CounterexampleReport, IntervalError> {
    if n < 2 {
        return Err(IntervalError::InvalidParams(format!("n = {n} must be at least 2")));
    }
    cache.ensure(2 * n + 1);
    let cut = integer_fourth_root(n).max(1);
    let mut lo = cache.at(2 * n).clone();
    let mut j = n;
    while j >= cut {
        lo += cache.at(j);
        if j < 2 {
            break;
        }
        j -= 2;
    }
    let hi = cache.at(2 * n) + cache.at(n + 1) + cache.at(cut);
    if lo >= hi {
        return Err(IntervalError::InvalidParams(format!("empty interval for n = {n}")));
    }
    let hist = exact_interval_histogram(cache, &lo, &hi)?;
    let length = &hi - &lo;
    Ok(CounterexampleReport { n, cut, lo, hi, length, distribution: DistributionSummary::from_histogram(hist) })
}

fn integer_fourth_root(n: usize) -> usize {
    let mut r = 0usize;
    while (r + 1).pow(4) <= n {
        r += 1;
    }
    r
}

/// A subinterval `[m, m + G_alpha)` whose `m` passed the zero-run gate.
#[derive(Debug, Clone, Serialize)]
pub struct PassingInterval {
    pub params: IntervalParams,
    #[serde(serialize_with = "ser_decimal")]
    pub m: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub length: BigUint,
    /// Draws of `m` until one passed.
    pub attempts: u64,
    pub distribution: DistributionSummary,
}

const MAX_ATTEMPTS: u64 = 100_000;

/// Draws `m` in `[G_n, G_{n+1})` until `C2(m)` holds a zero run of `3L`, with
/// `alpha` the largest index such that `G_alpha <= length` and `q` the
/// smallest even width holding that run.
pub fn random_passing_interval(
    cache: &mut SequenceCache,
    ambient_n: usize,
    length: &BigUint,
    seed: u64,
) -> Result<PassingInterval, IntervalError> {
    cache.ensure(ambient_n + 2);
    let mut alpha = 0;
    while alpha < ambient_n && cache.at(alpha + 1) <= length {
        alpha += 1;
    }
    if alpha == 0 {
        return Err(IntervalError::InvalidParams("length must be at least 1".into()));
    }
    let run = 3 * cache.plrs().len();
    let q = run + run % 2;
    let params = IntervalParams::new(ambient_n, alpha, q)?;
    let cache_ref: &SequenceCache = cache;
    let mut rng = stream_rng(seed, 0);
    for attempt in 1..=MAX_ATTEMPTS {
        let m = sample_ambient(&mut rng, cache_ref, ambient_n);
        let split = block_split(&decompose_in(cache_ref, &m)?, params)?;
        if has_zero_run(&split, run)? {
            let length = cache_ref.at(alpha).clone();
            let hi = &m + &length;
            let hist = exact_interval_histogram(cache, &m, &hi)?;
            return Ok(PassingInterval {
                params,
                m,
                length,
                attempts: attempt,
                distribution: DistributionSummary::from_histogram(hist),
            });
        }
    }
    Err(IntervalError::InvalidParams(format!("no passing m found in {MAX_ATTEMPTS} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Plrs;

    #[test]
    fn fibonacci_sixteen() {
        let mut cache = SequenceCache::new(Plrs::fibonacci());
        let r = counterexample_interval(&mut cache, 16).unwrap();
        assert_eq!(r.cut, 2);
        let base = cache.at(32) + cache.at(17);
        assert_eq!(r.lo, &base - 1u32);
        assert_eq!(r.hi, &base + 2u32);
        assert_eq!(r.distribution.histogram.to_u64_pairs().unwrap(), vec![(2, 1), (3, 1), (9, 1)]);
        assert!(r.distribution.bimodal);
        assert!(r.distribution.ks > 0.1);
    }

    #[test]
    fn fourth_roots() {
        assert_eq!(integer_fourth_root(15), 1);
        assert_eq!(integer_fourth_root(16), 2);
        assert_eq!(integer_fourth_root(80), 2);
        assert_eq!(integer_fourth_root(81), 3);
    }

    #[test]
    fn passing_interval_is_reproducible() {
        let mut cache = SequenceCache::new(Plrs::fibonacci());
        let a = random_passing_interval(&mut cache, 32, &BigUint::from(3u32), 0).unwrap();
        let b = random_passing_interval(&mut cache, 32, &BigUint::from(3u32), 0).unwrap();
        assert_eq!(a.m, b.m);
        assert_eq!(a.params, IntervalParams { n: 32, alpha: 3, q: 6 });
        assert_eq!(a.length, BigUint::from(3u32));
    }
}
