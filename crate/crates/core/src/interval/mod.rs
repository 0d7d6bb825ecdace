//! Summand counts on subintervals `[m, m + G_alpha)` of `[G_n, G_{n+1})`.
//!
//! For `m` in `[G_n, G_{n+1})` the decomposition splits into three blocks by
//! index: `C1 = 1..=alpha`, `C2 = alpha+1..=alpha+q` and `C3 = alpha+q+1..=n`.
//! When `C2(m)` holds a run of `3L` zero coefficients, every `x` in the
//! subinterval shares `C3(x) = C3(m)`, and the truncation map
//! `t(m + h) = (m_0 + h) mod G_alpha` carries the subinterval bijectively onto
//! `[0, G_alpha)` with `0 <= s(x) - s_3(m) - s(t(x)) < K q`.

mod blocks;
mod counterexample;
mod distribution;
mod experiment;
mod sampling;

pub use blocks::{block_split, has_zero_run, truncate_m0, BlockSplit, TruncationMap};
pub use counterexample::{counterexample_interval, random_passing_interval, CounterexampleReport, PassingInterval};
pub use distribution::{
    exact_count_distribution, exact_interval_histogram, histogram_over_interval, prefix_histogram, CompletionTable,
    IntervalMode,
};
pub use experiment::{
    gap_probability_estimate, run_subinterval_batch, subinterval_experiment, BatchAggregate, BatchResult, GapEstimate,
    SubintervalReport, WalkConfig,
};
pub use sampling::{sample_ambient, stream_rng, uniform_below};

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::DecomposeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("TooSmall: n = {0} must be at least 4")]
    TooSmall(usize),
    #[error("Infeasible: no even q with 2 <= q < n - alpha (n = {n}, alpha = {alpha})")]
    Infeasible { n: usize, alpha: usize },
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("IndexOutOfRange: top index {top} exceeds n = {n}")]
    IndexOutOfRange { top: usize, n: usize },
    #[error("RunExceedsWindow: run length {run} exceeds the C2 width q = {q}")]
    RunExceedsWindow { run: usize, q: usize },
    #[error("HOutOfRange: offset must lie in [0, G_alpha)")]
    HOutOfRange,
    #[error("NotInAmbientRange: m must lie in [G_n, G_(n+1))")]
    NotInAmbientRange,
    #[error("BudgetExceeded: interval of length {length} exceeds the exhaustive budget {budget}")]
    BudgetExceeded { length: String, budget: u64 },
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// `(n, alpha, q)`: ambient scale, subinterval scale and buffer width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalParams {
    pub n: usize,
    pub alpha: usize,
    pub q: usize,
}

impl IntervalParams {
    pub fn new(n: usize, alpha: usize, q: usize) -> Result<Self, IntervalError> {
        if alpha < 1 {
            return Err(IntervalError::InvalidParams("alpha must be at least 1".into()));
        }
        if q < 2 || !q.is_multiple_of(2) {
            return Err(IntervalError::InvalidParams(format!("q = {q} must be even and at least 2")));
        }
        if alpha + q >= n {
            return Err(IntervalError::InvalidParams(format!(
                "need alpha + q < n, got alpha = {alpha}, q = {q}, n = {n}"
            )));
        }
        Ok(IntervalParams { n, alpha, q })
    }

    /// Default schedule: `alpha = floor(n/2)` and the matching [`default_q`].
    pub fn defaults(n: usize) -> Result<Self, IntervalError> {
        let alpha = default_alpha(n)?;
        let q = default_q(n, alpha)?;
        Self::new(n, alpha, q)
    }

    /// Fills in whichever of `alpha`, `q` is missing from the defaults.
    pub fn with_overrides(n: usize, alpha: Option<usize>, q: Option<usize>) -> Result<Self, IntervalError> {
        let alpha = match alpha {
            Some(a) => a,
            None => default_alpha(n)?,
        };
        let q = match q {
            Some(q) => q,
            None => default_q(n, alpha)?,
        };
        Self::new(n, alpha, q)
    }
}

/// `floor(n / 2)`; both `alpha` and `n - alpha` grow without bound.
pub fn default_alpha(n: usize) -> Result<usize, IntervalError> {
    if n < 4 {
        return Err(IntervalError::TooSmall(n));
    }
    Ok(n / 2)
}

/// `2 * floor((alpha^(1/3) + 2) / 2)`, lowered to the largest even value below
/// `n - alpha` when it does not fit.
pub fn default_q(n: usize, alpha: usize) -> Result<usize, IntervalError> {
    if alpha >= n {
        return Err(IntervalError::Infeasible { n, alpha });
    }
    // floor((x + 2) / 2) = floor(floor(x) / 2) + 1 for x = cbrt(alpha)
    let preferred = 2 * (integer_cbrt(alpha as u64) as usize / 2 + 1);
    let room = n - alpha; // q must be < room
    if preferred < room {
        return Ok(preferred);
    }
    let largest = if room.is_multiple_of(2) { room.saturating_sub(2) } else { room - 1 };
    if largest >= 2 {
        Ok(largest)
    } else {
        Err(IntervalError::Infeasible { n, alpha })
    }
}

fn integer_cbrt(v: u64) -> u64 {
    let mut r = (v as f64).cbrt().round() as u64;
    while r * r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_schedule() {
        assert_eq!(default_alpha(40), Ok(20));
        assert_eq!(default_alpha(45), Ok(22));
        assert_eq!(default_alpha(100), Ok(50));
        assert_eq!(default_alpha(3), Err(IntervalError::TooSmall(3)));
    }

    #[test]
    fn q_schedule() {
        assert_eq!(default_q(40, 20), Ok(4));
        assert_eq!(default_q(200, 100), Ok(6));
        assert_eq!(default_q(10, 8), Err(IntervalError::Infeasible { n: 10, alpha: 8 }));
        // preferred 4 does not fit below n - alpha = 4, so 2 is used
        assert_eq!(default_q(12, 8), Ok(2));
        assert_eq!(default_q(13, 8), Ok(4));
        // perfect cubes
        assert_eq!(default_q(100, 27), Ok(4));
        assert_eq!(default_q(100, 64), Ok(6));
    }

    #[test]
    fn q_schedule_respects_constraints() {
        for n in 4..300 {
            let alpha = default_alpha(n).unwrap();
            if let Ok(q) = default_q(n, alpha) {
                assert!(q >= 2 && q % 2 == 0 && alpha + q < n, "n = {n}");
            }
        }
    }

    #[test]
    fn cube_roots() {
        for v in 0..2000u64 {
            let r = integer_cbrt(v);
            assert!(r * r * r <= v && (r + 1).pow(3) > v);
        }
    }

    #[test]
    fn params_validation() {
        assert!(IntervalParams::new(40, 20, 8).is_ok());
        assert!(IntervalParams::new(40, 20, 7).is_err());
        assert!(IntervalParams::new(40, 20, 20).is_err());
        assert!(IntervalParams::new(40, 0, 4).is_err());
        assert_eq!(IntervalParams::defaults(40).unwrap(), IntervalParams { n: 40, alpha: 20, q: 4 });
        assert_eq!(
            IntervalParams::with_overrides(45, Some(25), None).unwrap(),
            IntervalParams { n: 45, alpha: 25, q: 4 }
        );
    }
}
