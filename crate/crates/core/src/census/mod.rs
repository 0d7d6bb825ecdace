//! Counting integers whose decomposition has no large gap.
//!
//! `H_n` is the number of `m` in `[0, G_n)` whose decomposition has every gap
//! shorter than `Z`. For positive coefficients it satisfies the telescoped
//! recurrence
//!
//! `H_{n+1} = sum_l c_l (H_{n-l+1} - H_{n-l+1-Z}) + H_{n-L+1-Z} + kappa`
//!
//! where `kappa` depends on how gaps are measured (see [`GapConvention`]). The
//! homogeneous part has characteristic polynomial
//! `x^{L+Z} - sum_l c_l x^{L+Z-l} + sum_l c_l x^{L-l} - 1`, whose dominant root
//! `omega_hat` is compared with the growth rate `lambda` of `G_n`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::legality::LegalStrings;
use crate::stats::{linear_fit, ratio};
use crate::system::{Plrs, SequenceCache};

/// Largest `G_n` brute force will enumerate.
pub const BRUTE_FORCE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("ZNotGreaterThanL: Z = {z} must exceed L = {l}")]
    ZNotGreaterThanL { z: usize, l: usize },
    #[error("BudgetExceeded: G_{n} = {size} exceeds the enumeration budget {budget}")]
    BudgetExceeded { n: usize, size: String, budget: u64 },
    #[error("NonPositiveCoefficient: the recurrence needs every c_i >= 1 (c_{index} = 0)")]
    NonPositiveCoefficient { index: usize },
    #[error("NMaxTooSmall: n_max = {n_max} must be at least {min}")]
    NMaxTooSmall { n_max: usize, min: usize },
    #[error("TableTooShort: {rows} rows, need at least {min}")]
    TableTooShort { rows: usize, min: usize },
    #[error("NoConvergence: power iteration did not settle in {iterations} steps")]
    NoConvergence { iterations: usize },
}

/// How gap lengths are measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapConvention {
    /// Only unoccupied indices strictly between two summands count.
    #[default]
    BetweenSummands,
    /// As above, plus the run `1..j` below the lowest summand `G_j`.
    AnchoredAtZero,
}

impl GapConvention {
    /// The additive constant of the recurrence.
    fn kappa(self, plrs: &Plrs) -> u64 {
        match self {
            GapConvention::BetweenSummands => plrs.coeff_sum() - 1,
            GapConvention::AnchoredAtZero => 0,
        }
    }
}

fn check_z(plrs: &Plrs, z: usize) -> Result<(), CensusError> {
    if z <= plrs.len() {
        return Err(CensusError::ZNotGreaterThanL { z, l: plrs.len() });
    }
    Ok(())
}

// Largest gap of a top-down string under the convention; None when no gap exists.
fn max_gap(digits: &[u32], convention: GapConvention) -> Option<usize> {
    let len = digits.len();
    let mut best = None;
    let mut last: Option<usize> = None;
    for (i, &d) in digits.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let index = len - i;
        if let Some(prev) = last {
            best = best.max(Some(prev - index - 1));
        }
        last = Some(index);
    }
    if convention == GapConvention::AnchoredAtZero {
        if let Some(low) = last {
            best = best.max(Some(low - 1));
        }
    }
    best
}

/// `H_1..=H_n_max` by walking every legal string of length `n_max - 1`.
/// Entry `k` of the result is `H_{k+1}`.
pub fn h_bruteforce_table(
    cache: &mut SequenceCache,
    z: usize,
    n_max: usize,
    convention: GapConvention,
) -> Result<Vec<BigUint>, CensusError> {
    check_z(cache.plrs(), z)?;
    assert!(n_max >= 1, "n must be at least 1");
    cache.ensure(n_max);
    let size = cache.at(n_max);
    if size.to_u64().is_none_or(|s| s > BRUTE_FORCE_BUDGET) {
        return Err(CensusError::BudgetExceeded { n: n_max, size: size.to_string(), budget: BRUTE_FORCE_BUDGET });
    }
    let cache: &SequenceCache = cache;
    let len = n_max - 1;
    // by_top[t]: qualifying strings with top index t (0 for the empty string)
    let mut by_top = vec![0u64; n_max];
    let mut cursor = LegalStrings::new(cache.plrs(), cache.small_terms(), len);
    while cursor.advance() {
        let digits = cursor.digits();
        if max_gap(digits, convention).is_none_or(|g| g < z) {
            let top = digits.iter().position(|&d| d != 0).map_or(0, |i| len - i);
            by_top[top] += 1;
        }
    }
    let mut out = Vec::with_capacity(n_max);
    let mut acc = 0u64;
    for count in by_top {
        acc += count;
        out.push(BigUint::from(acc));
    }
    Ok(out)
}

/// `H_n` by enumeration.
pub fn h_bruteforce(
    cache: &mut SequenceCache,
    z: usize,
    n: usize,
    convention: GapConvention,
) -> Result<BigUint, CensusError> {
    let mut table = h_bruteforce_table(cache, z, n, convention)?;
    Ok(table.pop().expect("n >= 1"))
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(serialize_with = "ser_decimal")]
    pub h: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub g: BigUint,
    /// `H_n / G_n`.
    pub ratio: f64,
    /// `H_n - H_{n-1}`, with `H_0 = 0`.
    #[serde(serialize_with = "ser_decimal")]
    pub tilde: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusTable {
    pub signature: String,
    pub z: usize,
    pub convention: GapConvention,
    /// Rows computed by enumeration rather than the recurrence.
    pub base_cases: usize,
    pub rows: Vec<CensusRow>,
}

impl CensusTable {
    fn from_values(
        cache: &SequenceCache,
        z: usize,
        convention: GapConvention,
        base_cases: usize,
        h: Vec<BigUint>,
    ) -> Self {
        let mut prev = BigUint::zero();
        let rows = h
            .into_iter()
            .enumerate()
            .map(|(i, h)| {
                let n = i + 1;
                let g = cache.at(n).clone();
                let tilde = &h - &prev;
                prev = h.clone();
                CensusRow { n, ratio: ratio(&h, &g), h, g, tilde }
            })
            .collect();
        CensusTable { signature: cache.plrs().signature(), z, convention, base_cases, rows }
    }

    pub fn h(&self, n: usize) -> &BigUint {
        &self.rows[n - 1].h
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// `n,H_n,G_n,ratio,tilde` with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,H_n,G_n,ratio,tilde\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.h, r.g, r.ratio, r.tilde));
        }
        out
    }
}

/// `H_1..=H_n_max`: enumeration up to `L + Z + 1`, the recurrence beyond.
pub fn h_recurrence(
    cache: &mut SequenceCache,
    z: usize,
    n_max: usize,
    convention: GapConvention,
) -> Result<CensusTable, CensusError> {
    let plrs = cache.plrs().clone();
    check_z(&plrs, z)?;
    if let Some(i) = plrs.coeffs().iter().position(|&c| c == 0) {
        return Err(CensusError::NonPositiveCoefficient { index: i + 1 });
    }
    let l = plrs.len();
    let base = l + z + 1;
    if n_max < base + 1 {
        return Err(CensusError::NMaxTooSmall { n_max, min: base + 1 });
    }
    let mut h = h_bruteforce_table(cache, z, base, convention)?;
    let kappa = BigUint::from(convention.kappa(&plrs));
    // h[k] = H_{k+1}
    for n in base..n_max {
        let at = |j: usize| &h[j - 1];
        let mut next = at(n - l + 1 - z) + &kappa;
        for (i, &c) in plrs.coeffs().iter().enumerate() {
            let ell = i + 1;
            next += (at(n - ell + 1) - at(n - ell + 1 - z)) * c;
        }
        h.push(next);
    }
    cache.ensure(n_max);
    Ok(CensusTable::from_values(cache, z, convention, base, h))
}

/// Indices `n <= upto` at which the table disagrees with enumeration.
pub fn verify_against_bruteforce(
    cache: &mut SequenceCache,
    table: &CensusTable,
    upto: usize,
) -> Result<Vec<usize>, CensusError> {
    let upto = upto.min(table.n_max());
    let brute = h_bruteforce_table(cache, table.z, upto, table.convention)?;
    Ok((1..=upto).filter(|&n| &brute[n - 1] != table.h(n)).collect())
}

/// Coefficients of `x^L - sum c_i x^{L-i}`, highest degree first.
pub fn g_char_poly(plrs: &Plrs) -> Vec<f64> {
    std::iter::once(1.0).chain(plrs.coeffs().iter().map(|&c| -f64::from(c))).collect()
}

/// Coefficients of the homogeneous `H` polynomial, highest degree first.
pub fn h_char_poly(plrs: &Plrs, z: usize) -> Vec<f64> {
    let l = plrs.len();
    let mut p = vec![0.0; l + z + 1];
    p[0] = 1.0;
    for (i, &c) in plrs.coeffs().iter().enumerate() {
        let ell = i + 1;
        p[ell] -= f64::from(c);
        p[ell + z] += f64::from(c);
    }
    p[l + z] -= 1.0;
    p
}

/// Horner evaluation; coefficients highest degree first.
pub fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// The positive root of the `G` polynomial, by bisection on `[1, 1 + sum c]`.
pub fn g_dominant_root(plrs: &Plrs) -> f64 {
    let p = g_char_poly(plrs);
    let (mut lo, mut hi) = (1.0, 1.0 + plrs.coeff_sum() as f64);
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if poly_eval(&p, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

const POWER_ITERATION_CAP: usize = 100_000;

/// Dominant root of the `H` polynomial by power iteration on its companion
/// matrix, finished with a few Newton steps.
pub fn h_dominant_root(plrs: &Plrs, z: usize) -> Result<f64, CensusError> {
    check_z(plrs, z)?;
    let p = h_char_poly(plrs, z);
    let degree = p.len() - 1;
    // companion action: the recurrence x_{k+degree} = -sum p[j] x_{k+degree-j}
    // constant sequences are fixed by the unit root, so start off them
    let mut window: Vec<f64> = (0..degree).map(|k| 0.5f64.powi((degree - k) as i32)).collect();
    let mut estimate = f64::NAN;
    let mut converged = false;
    for _ in 0..POWER_ITERATION_CAP {
        let next: f64 = -(1..=degree).map(|j| p[j] * window[degree - j]).sum::<f64>();
        let last = window[degree - 1];
        let rate = next / last;
        window.remove(0);
        window.push(next);
        let scale = next.abs();
        window.iter_mut().for_each(|v| *v /= scale);
        if (rate - estimate).abs() < 1e-12 * rate.abs() {
            estimate = rate;
            converged = true;
            break;
        }
        estimate = rate;
    }
    if !converged || !estimate.is_finite() {
        return Err(CensusError::NoConvergence { iterations: POWER_ITERATION_CAP });
    }
    let dp: Vec<f64> = p[..degree].iter().enumerate().map(|(i, &c)| c * (degree - i) as f64).collect();
    for _ in 0..8 {
        let d = poly_eval(&dp, estimate);
        if d == 0.0 {
            break;
        }
        estimate -= poly_eval(&p, estimate) / d;
    }
    Ok(estimate)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    pub lambda: f64,
    pub omega_hat: f64,
    /// `H_{n_max} / H_{n_max - 1}` when a table was supplied.
    pub empirical_rate: Option<f64>,
    /// `lambda - omega_hat`.
    pub gap: f64,
}

pub fn char_poly_roots(plrs: &Plrs, z: usize, table: Option<&CensusTable>) -> Result<RootReport, CensusError> {
    let lambda = g_dominant_root(plrs);
    let omega_hat = h_dominant_root(plrs, z)?;
    let empirical_rate = table.filter(|t| t.n_max() >= 2).map(|t| {
        let n = t.n_max();
        ratio(t.h(n), t.h(n - 1))
    });
    Ok(RootReport { lambda, omega_hat, empirical_rate, gap: lambda - omega_hat })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    /// `(n, H_n / G_n)` for every row.
    pub ratios: Vec<(usize, f64)>,
    /// First `n` of the fitted tail.
    pub fit_from: usize,
    pub slope: f64,
    pub intercept: f64,
    /// `ln(omega_hat / lambda)`.
    pub predicted: f64,
    pub deviation: f64,
    /// Smallest `n` from which the ratio never increases, if any.
    pub nonincreasing_from: Option<usize>,
    pub pass: bool,
}

/// Allowed `|slope - ln(omega_hat / lambda)|`.
pub const DECAY_TOLERANCE: f64 = 0.05;

/// Least-squares fit of `ln(H_n / G_n)` against `n` over the last half of the table.
pub fn decay_report(table: &CensusTable, roots: &RootReport) -> Result<DecayReport, CensusError> {
    let min = table.base_cases + 10;
    if table.rows.len() < min {
        return Err(CensusError::TableTooShort { rows: table.rows.len(), min });
    }
    let ratios: Vec<(usize, f64)> = table.rows.iter().map(|r| (r.n, r.ratio)).collect();
    let tail = &table.rows[table.rows.len() / 2..];
    let points: Vec<(f64, f64)> = tail.iter().map(|r| (r.n as f64, ln_big(&r.h) - ln_big(&r.g))).collect();
    let (slope, intercept) = linear_fit(&points).expect("tail has distinct n");
    let predicted = (roots.omega_hat / roots.lambda).ln();
    let deviation = (slope - predicted).abs();
    let mut nonincreasing_from = Some(table.rows[table.rows.len() - 1].n);
    for w in table.rows.windows(2).rev() {
        if w[1].ratio > w[0].ratio {
            break;
        }
        nonincreasing_from = Some(w[0].n);
    }
    Ok(DecayReport {
        ratios,
        fit_from: tail[0].n,
        slope,
        intercept,
        predicted,
        deviation,
        nonincreasing_from,
        pass: slope < 0.0 && deviation <= DECAY_TOLERANCE,
    })
}

fn ln_big(v: &BigUint) -> f64 {
    assert!(!v.is_zero(), "log of zero");
    let bits = v.bits();
    if bits <= 64 {
        return v.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}
