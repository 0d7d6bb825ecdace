use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::RngCore;
use serde::{Serialize, Serializer};

use super::blocks::{block_split, has_zero_run, TruncationMap};
use super::sampling::{run_chunks, sample_ambient, stream_rng, uniform_below};
use super::{IntervalError, IntervalParams};
use crate::decomposition::decompose_in;
use crate::stats::{median, DistributionSummary, Histogram};
use crate::system::SequenceCache;

/// How much of `[m, m + G_alpha)` a subinterval experiment visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkConfig {
    /// Walk every offset when `G_alpha` is at most this.
    pub exhaustive_budget: u64,
    /// Offsets drawn otherwise.
    pub samples: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { exhaustive_budget: 2_000_000, samples: 20_000 }
    }
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Outcome of one subinterval experiment.
#[derive(Debug, Clone, Serialize)]
pub struct SubintervalReport {
    #[serde(serialize_with = "ser_decimal")]
    pub m: BigUint,
    pub params: IntervalParams,
    /// The signature is monotone, i.e. inside the hypothesis under which the
    /// block lemmas are guaranteed.
    pub within_hypothesis: bool,
    /// `q < 3L`: no zero run of length `3L` fits in `C2`.
    pub window_too_small: bool,
    pub zero_run_found: bool,
    /// True when the walk ran; false and vacuous otherwise.
    pub checks_ran: bool,
    pub exhaustive: bool,
    pub visited: u64,
    pub c3_constant: bool,
    pub shift_error_min: Option<i64>,
    pub shift_error_max: Option<i64>,
    /// `K q`.
    pub shift_error_bound: i64,
    /// `0 <= s(x) - s_3(m) - s(t(x)) < K q` at every visited `x`.
    pub shift_error_ok: bool,
    /// Exhaustive walks: `t` hits every value of `[0, G_alpha)` once.
    /// Sampled walks: `t` is injective on the visited offsets.
    pub bijection_verified: bool,
    /// Visited `x` whose coefficients below `alpha` differ from those of `t(x)`.
    pub prefix_disagreements: u64,
    pub lowest_disagreement_index: Option<usize>,
    pub distribution: Option<DistributionSummary>,
}

impl SubintervalReport {
    pub fn passed(&self) -> bool {
        self.zero_run_found && self.checks_ran && self.c3_constant && self.shift_error_ok && self.bijection_verified
    }
}

/// Runs the block-lemma checks for one `m` in `[G_n, G_{n+1})` and returns the
/// distribution of `s(x)` over the visited part of `[m, m + G_alpha)`.
pub fn subinterval_experiment(
    cache: &mut SequenceCache,
    m: &BigUint,
    params: IntervalParams,
    walk: WalkConfig,
    seed: u64,
) -> Result<SubintervalReport, IntervalError> {
    cache.ensure(params.n + 2);
    experiment_in(cache, m, params, walk, &mut stream_rng(seed, 0))
}

pub(crate) fn experiment_in(
    cache: &SequenceCache,
    m: &BigUint,
    params: IntervalParams,
    walk: WalkConfig,
    rng: &mut dyn RngCore,
) -> Result<SubintervalReport, IntervalError> {
    let IntervalParams { n, alpha, q } = params;
    if m < cache.at(n) || m >= cache.at(n + 1) {
        return Err(IntervalError::NotInAmbientRange);
    }
    let plrs = cache.plrs();
    let run = 3 * plrs.len();
    let bound = i64::from(plrs.max_coeff()) * q as i64;
    let dm = decompose_in(cache, m)?;
    let split = block_split(&dm, params)?;
    let (window_too_small, zero_run_found) = match has_zero_run(&split, run) {
        Ok(found) => (false, found),
        Err(IntervalError::RunExceedsWindow { .. }) => (true, false),
        Err(e) => return Err(e),
    };
    let mut report = SubintervalReport {
        m: m.clone(),
        params,
        within_hypothesis: plrs.is_monotone(),
        window_too_small,
        zero_run_found,
        checks_ran: false,
        exhaustive: false,
        visited: 0,
        c3_constant: false,
        shift_error_min: None,
        shift_error_max: None,
        shift_error_bound: bound,
        shift_error_ok: false,
        bijection_verified: false,
        prefix_disagreements: 0,
        lowest_disagreement_index: None,
        distribution: None,
    };
    if !zero_run_found {
        return Ok(report);
    }

    let tmap = TruncationMap::new(&dm, alpha, cache);
    let g_alpha = cache.at(alpha).clone();
    let c3_m = dm.slice(alpha + q + 1, usize::MAX).to_vec();
    let s3_m = split.s3 as i64;

    let mut walker = Walker {
        cache,
        alpha,
        c3_start: alpha + q + 1,
        c3_m: &c3_m,
        s3_m,
        hist: Histogram::new(),
        c3_constant: true,
        emin: i64::MAX,
        emax: i64::MIN,
        disagreements: 0,
        lowest: None,
    };

    let exhaustive = g_alpha.to_u64().is_some_and(|g| g <= walk.exhaustive_budget);
    let bijective = if exhaustive {
        let g = g_alpha.to_u64().expect("checked");
        let mut hit = vec![false; g as usize];
        let mut injective = true;
        for h in 0..g {
            let t = tmap.apply_u64(h).expect("h < G_alpha");
            if std::mem::replace(&mut hit[t as usize], true) {
                injective = false;
            }
            walker.visit(&(m + h), &BigUint::from(t))?;
        }
        report.visited = g;
        injective && hit.iter().all(|&b| b)
    } else {
        let mut offsets = BTreeSet::new();
        let mut images = BTreeSet::new();
        let mut injective = true;
        while (offsets.len() as u64) < walk.samples {
            let h = uniform_below(rng, &g_alpha);
            if !offsets.insert(h.clone()) {
                continue;
            }
            let t = tmap.apply(&h)?;
            if !images.insert(t.clone()) {
                injective = false;
            }
            walker.visit(&(m + &h), &t)?;
        }
        report.visited = walk.samples;
        injective
    };

    report.checks_ran = true;
    report.exhaustive = exhaustive;
    report.c3_constant = walker.c3_constant;
    report.shift_error_min = Some(walker.emin);
    report.shift_error_max = Some(walker.emax);
    report.shift_error_ok = walker.emin >= 0 && walker.emax < bound;
    report.bijection_verified = bijective;
    report.prefix_disagreements = walker.disagreements;
    report.lowest_disagreement_index = walker.lowest;
    report.distribution = Some(DistributionSummary::from_histogram(walker.hist));
    Ok(report)
}

struct Walker<'a> {
    cache: &'a SequenceCache,
    alpha: usize,
    c3_start: usize,
    c3_m: &'a [(usize, u32)],
    s3_m: i64,
    hist: Histogram,
    c3_constant: bool,
    emin: i64,
    emax: i64,
    disagreements: u64,
    lowest: Option<usize>,
}

impl Walker<'_> {
    fn visit(&mut self, x: &BigUint, t: &BigUint) -> Result<(), IntervalError> {
        let dx = decompose_in(self.cache, x)?;
        let dt = decompose_in(self.cache, t)?;
        let sx = dx.summand_count();
        self.hist.add_one(sx);
        let alpha = self.alpha;
        if dx.slice(self.c3_start, usize::MAX) != self.c3_m {
            self.c3_constant = false;
        }
        let e = sx as i64 - self.s3_m - dt.summand_count() as i64;
        self.emin = self.emin.min(e);
        self.emax = self.emax.max(e);
        if let Some(j) = first_difference(dx.slice(1, alpha - 1), dt.slice(1, alpha - 1)) {
            self.disagreements += 1;
            self.lowest = Some(self.lowest.map_or(j, |l| l.min(j)));
        }
        Ok(())
    }
}

// Lowest index at which two ascending entry lists differ.
fn first_difference(a: &[(usize, u32)], b: &[(usize, u32)]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return None,
            (Some(&(ja, _)), None) => return Some(ja),
            (None, Some(&(jb, _))) => return Some(jb),
            (Some(&(ja, ca)), Some(&(jb, cb))) => {
                if ja != jb {
                    return Some(ja.min(jb));
                }
                if ca != cb {
                    return Some(ja);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// Fraction of sampled `m` in `[G_n, G_{n+1})` whose `C2` holds a zero run of
/// length `3L`.
#[derive(Debug, Clone, Serialize)]
pub struct GapEstimate {
    pub fraction: f64,
    pub hits: u64,
    pub samples: u64,
    pub warning: Option<String>,
}

const GAP_CHUNK: u64 = 256;

pub fn gap_probability_estimate(
    cache: &mut SequenceCache,
    params: IntervalParams,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<GapEstimate, IntervalError> {
    assert!(samples >= 1, "need at least one sample");
    let run = 3 * cache.plrs().len();
    if params.q < run {
        return Ok(GapEstimate {
            fraction: 0.0,
            hits: 0,
            samples,
            warning: Some(format!("WindowTooSmall: q = {} < 3L = {run}", params.q)),
        });
    }
    cache.ensure(params.n + 2);
    let cache: &SequenceCache = cache;
    let chunks = samples.div_ceil(GAP_CHUNK) as usize;
    let parts = run_chunks(threads, chunks, |c| -> Result<u64, IntervalError> {
        let mut rng = stream_rng(seed, c as u64);
        let count = GAP_CHUNK.min(samples - c as u64 * GAP_CHUNK);
        let mut hits = 0;
        for _ in 0..count {
            let m = sample_ambient(&mut rng, cache, params.n);
            let split = block_split(&decompose_in(cache, &m)?, params)?;
            if has_zero_run(&split, run)? {
                hits += 1;
            }
        }
        Ok(hits)
    });
    let hits = parts.into_iter().sum::<Result<u64, _>>()?;
    Ok(GapEstimate { fraction: hits as f64 / samples as f64, hits, samples, warning: None })
}

/// Summary over a batch of subinterval experiments.
#[derive(Debug, Clone, Serialize)]
pub struct BatchAggregate {
    pub samples: u64,
    /// Reports whose `m` passed the zero-run gate.
    pub passing: u64,
    pub pass_fraction: f64,
    /// Median continuity-corrected KS distance among passing reports.
    pub median_ks: Option<f64>,
    pub c3_failures: u64,
    pub shift_bound_violations: u64,
    pub bijection_failures: u64,
    pub prefix_disagreements: u64,
    pub within_hypothesis: bool,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchResult {
    pub reports: Vec<SubintervalReport>,
    pub aggregate: BatchAggregate,
}

const BATCH_CHUNK: u64 = 16;

/// Samples `samples` values of `m` and runs [`subinterval_experiment`] on each.
/// Results do not depend on `threads`.
pub fn run_subinterval_batch(
    cache: &mut SequenceCache,
    params: IntervalParams,
    samples: u64,
    seed: u64,
    threads: usize,
    walk: WalkConfig,
) -> Result<BatchResult, IntervalError> {
    cache.ensure(params.n + 2);
    let cache: &SequenceCache = cache;
    let chunks = samples.div_ceil(BATCH_CHUNK) as usize;
    let parts = run_chunks(threads, chunks, |c| -> Result<Vec<SubintervalReport>, IntervalError> {
        let mut rng = stream_rng(seed, c as u64);
        let first = c as u64 * BATCH_CHUNK;
        let count = BATCH_CHUNK.min(samples - first);
        let mut out = Vec::with_capacity(count as usize);
        for i in 0..count {
            let m = sample_ambient(&mut rng, cache, params.n);
            let mut walk_rng = stream_rng(seed, (1 << 40) + first + i);
            out.push(experiment_in(cache, &m, params, walk, &mut walk_rng)?);
        }
        Ok(out)
    });
    let mut reports = Vec::with_capacity(samples as usize);
    for p in parts {
        reports.extend(p?);
    }
    let passing: Vec<&SubintervalReport> = reports.iter().filter(|r| r.zero_run_found).collect();
    let ks: Vec<f64> = passing.iter().filter_map(|r| r.distribution.as_ref().map(|d| d.ks)).collect();
    let warning = reports
        .first()
        .filter(|r| r.window_too_small)
        .map(|_| format!("WindowTooSmall: q = {} < 3L = {}", params.q, 3 * cache.plrs().len()));
    let aggregate = BatchAggregate {
        samples,
        passing: passing.len() as u64,
        pass_fraction: passing.len() as f64 / samples.max(1) as f64,
        median_ks: median(&ks),
        c3_failures: passing.iter().filter(|r| !r.c3_constant).count() as u64,
        shift_bound_violations: passing.iter().filter(|r| !r.shift_error_ok).count() as u64,
        bijection_failures: passing.iter().filter(|r| !r.bijection_verified).count() as u64,
        prefix_disagreements: passing.iter().map(|r| r.prefix_disagreements).sum(),
        within_hypothesis: cache.plrs().is_monotone(),
        warning,
    };
    Ok(BatchResult { reports, aggregate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::Decomposition;
    use crate::system::Plrs;

    fn fib(n: usize) -> SequenceCache {
        let mut c = SequenceCache::new(Plrs::fibonacci());
        c.ensure(n + 2);
        c
    }

    #[test]
    fn passing_m_satisfies_block_lemmas() {
        let mut cache = fib(30);
        // C2 = 15..=22 is empty
        let m = Decomposition::from_entries(vec![(2, 1), (6, 1), (9, 1), (12, 1), (30, 1)], &mut cache).unwrap();
        let params = IntervalParams::new(30, 14, 8).unwrap();
        let r = subinterval_experiment(&mut cache, m.value(), params, WalkConfig::default(), 0).unwrap();
        assert!(r.zero_run_found && r.checks_ran && r.exhaustive);
        assert_eq!(r.visited, 610);
        assert!(r.c3_constant && r.shift_error_ok && r.bijection_verified);
        assert!(r.shift_error_min.unwrap() >= 0);
        assert_eq!(r.distribution.unwrap().total, BigUint::from(610u32));
    }

    #[test]
    fn failing_m_skips_checks() {
        let mut cache = fib(30);
        let m = Decomposition::from_entries(vec![(16, 1), (19, 1), (22, 1), (30, 1)], &mut cache).unwrap();
        let params = IntervalParams::new(30, 14, 8).unwrap();
        let r = subinterval_experiment(&mut cache, m.value(), params, WalkConfig::default(), 0).unwrap();
        assert!(!r.zero_run_found && !r.checks_ran && !r.passed());
        assert!(r.distribution.is_none());
    }

    #[test]
    fn rejects_m_outside_ambient_range() {
        let mut cache = fib(30);
        let params = IntervalParams::new(30, 14, 8).unwrap();
        let m = cache.at(30) - 1u32;
        assert_eq!(
            subinterval_experiment(&mut cache, &m, params, WalkConfig::default(), 0).unwrap_err(),
            IntervalError::NotInAmbientRange
        );
    }

    #[test]
    fn sampled_walk_matches_hypothesis() {
        let mut cache = fib(60);
        let params = IntervalParams::new(60, 30, 8).unwrap();
        let walk = WalkConfig { exhaustive_budget: 1000, samples: 500 };
        let batch = run_subinterval_batch(&mut cache, params, 12, 5, 2, walk).unwrap();
        assert_eq!(batch.reports.len(), 12);
        for r in batch.reports.iter().filter(|r| r.zero_run_found) {
            assert!(!r.exhaustive);
            assert_eq!(r.visited, 500);
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(batch.aggregate.c3_failures + batch.aggregate.shift_bound_violations, 0);
    }

    #[test]
    fn batch_is_thread_independent() {
        let mut cache = fib(40);
        let params = IntervalParams::new(40, 20, 8).unwrap();
        let walk = WalkConfig { exhaustive_budget: 20_000, samples: 100 };
        let a = run_subinterval_batch(&mut cache, params, 20, 3, 1, walk).unwrap();
        let b = run_subinterval_batch(&mut cache, params, 20, 3, 4, walk).unwrap();
        let ms = |r: &BatchResult| r.reports.iter().map(|x| x.m.clone()).collect::<Vec<_>>();
        assert_eq!(ms(&a), ms(&b));
        assert_eq!(a.aggregate.passing, b.aggregate.passing);
        assert_eq!(a.aggregate.median_ks, b.aggregate.median_ks);
    }

    #[test]
    fn gap_estimate_warns_on_narrow_window() {
        let mut cache = fib(40);
        let params = IntervalParams::new(40, 20, 4).unwrap();
        let g = gap_probability_estimate(&mut cache, params, 100, 0, 1).unwrap();
        assert_eq!(g.fraction, 0.0);
        assert!(g.warning.unwrap().starts_with("WindowTooSmall"));
    }

    #[test]
    fn gap_estimate_is_thread_independent() {
        let mut cache = fib(40);
        let params = IntervalParams::new(40, 20, 8).unwrap();
        let a = gap_probability_estimate(&mut cache, params, 3000, 1, 1).unwrap();
        let b = gap_probability_estimate(&mut cache, params, 3000, 1, 3).unwrap();
        assert_eq!(a.hits, b.hits);
        assert!(a.fraction > 0.0 && a.fraction < 1.0);
    }

    #[test]
    fn first_difference_cases() {
        assert_eq!(first_difference(&[(1, 1), (4, 1)], &[(1, 1), (4, 1)]), None);
        assert_eq!(first_difference(&[(1, 1), (4, 1)], &[(1, 1), (5, 1)]), Some(4));
        assert_eq!(first_difference(&[(2, 2)], &[(2, 1)]), Some(2));
        assert_eq!(first_difference(&[], &[(7, 1)]), Some(7));
    }
}
