//! Exact and sampled summand-count distributions.
//!
//! The exact routes are dynamic programs over the block automaton: the
//! number of legal strings of a given length, read from a given state, broken
//! down by coefficient sum. Legal strings of length `k - 1` are exactly the
//! decompositions of `[0, G_k)`, and their lexicographic order is numeric
//! order, so a digit-by-digit walk along the string of `X` counts `[0, X)`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::sampling::{run_chunks, stream_rng, uniform_below};
use super::IntervalError;
use crate::decomposition::{decompose, decompose_in};
use crate::legality::BlockAutomaton;
use crate::stats::{DistributionSummary, Histogram};
use crate::system::{Plrs, SequenceCache};

/// How [`histogram_over_interval`] visits the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalMode {
    /// Digit dynamic program, no enumeration.
    Exact,
    /// Decompose every integer; refuses intervals longer than `budget`.
    Exhaustive { budget: u64 },
    /// Decompose `samples` uniform draws.
    Sample { samples: u64, seed: u64 },
}

/// `rows[len][state]`: counts of legal completions of `len` digits read from
/// `state`, indexed by coefficient sum.
#[derive(Debug, Clone)]
pub struct CompletionTable {
    rows: Vec<Vec<Vec<BigUint>>>,
}

impl CompletionTable {
    pub fn new(plrs: &Plrs, max_len: usize) -> Self {
        let automaton = BlockAutomaton::new(plrs);
        let states = automaton.states();
        let mut rows = vec![vec![vec![BigUint::from(1u32)]; states]];
        for len in 1..=max_len {
            let prev: &Vec<Vec<BigUint>> = &rows[len - 1];
            let row = (0..states)
                .map(|s| {
                    let mut poly: Vec<BigUint> = Vec::new();
                    for d in 0..=automaton.max_digit(s) {
                        let Some(ns) = automaton.step(s, d) else { continue };
                        add_shifted(&mut poly, &prev[ns], d as usize);
                    }
                    poly
                })
                .collect();
            rows.push(row);
        }
        CompletionTable { rows }
    }

    pub fn max_len(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, len: usize, state: usize) -> &[BigUint] {
        &self.rows[len][state]
    }
}

fn add_shifted(acc: &mut Vec<BigUint>, poly: &[BigUint], shift: usize) {
    if acc.len() < poly.len() + shift {
        acc.resize(poly.len() + shift, BigUint::default());
    }
    for (k, v) in poly.iter().enumerate() {
        acc[k + shift] += v;
    }
}

fn poly_to_histogram(poly: &[BigUint]) -> Histogram {
    let mut h = Histogram::new();
    for (k, v) in poly.iter().enumerate() {
        h.add(k as u64, v.clone());
    }
    h
}

/// Exact distribution of summand counts over `[0, G_k)`.
pub fn exact_count_distribution(plrs: &Plrs, k: usize) -> DistributionSummary {
    assert!(k >= 1, "k must be at least 1");
    let table = CompletionTable::new(plrs, k - 1);
    DistributionSummary::from_histogram(poly_to_histogram(table.get(k - 1, 0)))
}

/// Exact histogram of summand counts over `[0, x)`.
pub fn prefix_histogram(cache: &mut SequenceCache, x: &BigUint) -> Result<Histogram, IntervalError> {
    let len = cache.index_budget_for(x);
    let table = CompletionTable::new(cache.plrs(), len);
    prefix_with_table(cache, &table, x)
}

fn prefix_with_table(
    cache: &mut SequenceCache,
    table: &CompletionTable,
    x: &BigUint,
) -> Result<Histogram, IntervalError> {
    let digits = decompose(cache, x)?.to_top_down(None);
    let len = digits.len();
    assert!(table.max_len() + 1 >= len, "completion table too short");
    let automaton = BlockAutomaton::new(cache.plrs());
    let mut poly = Vec::new();
    let mut state = 0;
    let mut acc = 0usize;
    for (i, &xd) in digits.iter().enumerate() {
        let rest = len - i - 1;
        for d in 0..xd {
            if let Some(ns) = automaton.step(state, d) {
                add_shifted(&mut poly, table.get(rest, ns), acc + d as usize);
            }
        }
        state = automaton.step(state, xd).expect("decomposition is legal");
        acc += xd as usize;
    }
    Ok(poly_to_histogram(&poly))
}

/// Exact histogram over `[lo, hi)` as the difference of two prefix counts.
pub fn exact_interval_histogram(
    cache: &mut SequenceCache,
    lo: &BigUint,
    hi: &BigUint,
) -> Result<Histogram, IntervalError> {
    if lo >= hi {
        return Err(IntervalError::InvalidParams("empty interval".into()));
    }
    let len = cache.index_budget_for(hi);
    let table = CompletionTable::new(cache.plrs(), len);
    let upper = prefix_with_table(cache, &table, hi)?;
    let lower = prefix_with_table(cache, &table, lo)?;
    Ok(upper.subtract(&lower))
}

const WALK_CHUNK: u64 = 4096;
const SAMPLE_CHUNK: u64 = 256;

/// Distribution of summand counts over `[lo, lo + length)`.
pub fn histogram_over_interval(
    cache: &mut SequenceCache,
    lo: &BigUint,
    length: &BigUint,
    mode: IntervalMode,
    threads: usize,
) -> Result<DistributionSummary, IntervalError> {
    if *length == BigUint::default() {
        return Err(IntervalError::InvalidParams("interval length must be at least 1".into()));
    }
    let hi = lo + length;
    let budget = cache.index_budget_for(&hi);
    cache.ensure(budget + 1);
    let hist = match mode {
        IntervalMode::Exact => exact_interval_histogram(cache, lo, &hi)?,
        IntervalMode::Exhaustive { budget } => {
            let len = length
                .to_u64()
                .filter(|&l| l <= budget)
                .ok_or_else(|| IntervalError::BudgetExceeded { length: length.to_string(), budget })?;
            let cache: &SequenceCache = cache;
            let chunks = len.div_ceil(WALK_CHUNK) as usize;
            let parts = run_chunks(threads, chunks, |c| -> Result<Histogram, IntervalError> {
                let start = c as u64 * WALK_CHUNK;
                let end = (start + WALK_CHUNK).min(len);
                let mut h = Histogram::new();
                for off in start..end {
                    let x = lo + off;
                    h.add_one(decompose_in(cache, &x)?.summand_count());
                }
                Ok(h)
            });
            merge(parts)?
        }
        IntervalMode::Sample { samples, seed } => {
            let cache: &SequenceCache = cache;
            let chunks = samples.div_ceil(SAMPLE_CHUNK) as usize;
            let parts = run_chunks(threads, chunks, |c| -> Result<Histogram, IntervalError> {
                let mut rng = stream_rng(seed, c as u64);
                let count = SAMPLE_CHUNK.min(samples - c as u64 * SAMPLE_CHUNK);
                let mut h = Histogram::new();
                for _ in 0..count {
                    let x = lo + uniform_below(&mut rng, length);
                    h.add_one(decompose_in(cache, &x)?.summand_count());
                }
                Ok(h)
            });
            merge(parts)?
        }
    };
    Ok(DistributionSummary::from_histogram(hist))
}

fn merge(parts: Vec<Result<Histogram, IntervalError>>) -> Result<Histogram, IntervalError> {
    let mut out = Histogram::new();
    for p in parts {
        out.merge(&p?);
    }
    Ok(out)
}
