//! Sparse decompositions `N = sum a_j G_j` and the two decomposers.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::legality::BlockAutomaton;
use crate::system::SequenceCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("ZeroOrNegativeInput: expected a positive integer")]
    ZeroOrNegativeInput,
    #[error("NonMonotonePlrs: greedy decomposition needs c_1 >= c_2 >= ... >= c_L >= 1")]
    NonMonotonePlrs,
    #[error("BudgetTooSmall: value does not fit below G_{}", .index_budget + 1)]
    BudgetTooSmall { index_budget: usize },
    #[error("NoLegalDecomposition: search found no legal string (internal invariant violated)")]
    NoLegalDecomposition,
    #[error("MultipleLegalDecompositions: search found two legal strings (internal invariant violated)")]
    MultipleLegalDecompositions,
    #[error("NotMaterialized: the sequence cache must hold G_1..G_{needed}")]
    NotMaterialized { needed: usize },
    #[error("InvalidEntries: {0}")]
    InvalidEntries(&'static str),
}

/// A decomposition stored ascending by index: `entries[k] = (j, a_j)` with
/// `a_j >= 1`. The value `sum a_j G_j` is cached.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    entries: Vec<(usize, u32)>,
    value: BigUint,
}

impl Decomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from ascending `(index, coefficient)` pairs; zero coefficients are dropped.
    pub fn from_entries(entries: Vec<(usize, u32)>, cache: &mut SequenceCache) -> Result<Self, DecomposeError> {
        let entries: Vec<_> = entries.into_iter().filter(|&(_, a)| a > 0).collect();
        if entries.iter().any(|&(j, _)| j == 0) {
            return Err(DecomposeError::InvalidEntries("indices start at 1"));
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(DecomposeError::InvalidEntries("indices must be strictly increasing"));
        }
        if let Some(&(top, _)) = entries.last() {
            cache.ensure(top);
        }
        let value = entries.iter().map(|&(j, a)| cache.at(j) * a).sum();
        Ok(Decomposition { entries, value })
    }

    /// Builds from a top-down coefficient string (`digits[0]` multiplies `G_len`).
    pub fn from_top_down(digits: &[u32], cache: &SequenceCache) -> Self {
        let entries = entries_from_top_down(digits);
        let value = entries.iter().map(|&(j, a)| cache.at(j) * a).sum();
        Decomposition { entries, value }
    }

    /// As [`from_top_down`](Self::from_top_down) with the value supplied by the caller.
    pub(crate) fn from_top_down_valued(digits: &[u32], value: BigUint) -> Self {
        Decomposition { entries: entries_from_top_down(digits), value }
    }

    pub(crate) fn from_parts(entries: Vec<(usize, u32)>, value: BigUint) -> Self {
        Decomposition { entries, value }
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top_index(&self) -> Option<usize> {
        self.entries.last().map(|&(j, _)| j)
    }

    /// Coefficient of `G_index` (zero when absent).
    pub fn coeff(&self, index: usize) -> u32 {
        self.entries.binary_search_by_key(&index, |&(j, _)| j).map(|k| self.entries[k].1).unwrap_or(0)
    }

    /// Entries with index in `lo..=hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> &[(usize, u32)] {
        let a = self.entries.partition_point(|&(j, _)| j < lo);
        let b = self.entries.partition_point(|&(j, _)| j <= hi);
        &self.entries[a..b.max(a)]
    }

    /// Number of summands, the sum of all coefficients.
    pub fn summand_count(&self) -> u64 {
        self.entries.iter().map(|&(_, a)| u64::from(a)).sum()
    }

    /// Unoccupied indices strictly between consecutive occupied indices, from
    /// the bottom up. Nothing is counted above the top summand or below the lowest.
    pub fn gap_lengths(&self) -> Vec<usize> {
        self.entries.windows(2).map(|w| w[1].0 - w[0].0 - 1).collect()
    }

    pub fn max_gap(&self) -> Option<usize> {
        self.gap_lengths().into_iter().max()
    }

    /// Top-down coefficient string of length `len` (defaults to the top index).
    pub fn to_top_down(&self, len: Option<usize>) -> Vec<u32> {
        let top = self.top_index().unwrap_or(0);
        let len = len.unwrap_or(top);
        assert!(len >= top, "string length {len} below top index {top}");
        let mut digits = vec![0; len];
        for &(j, a) in &self.entries {
            digits[len - j] = a;
        }
        digits
    }

    /// Dense ascending coefficients for indices `lo..=hi`.
    pub fn dense(&self, lo: usize, hi: usize) -> Vec<u32> {
        let mut out = vec![0; hi + 1 - lo];
        for &(j, a) in self.slice(lo, hi) {
            out[j - lo] = a;
        }
        out
    }

    /// `G5+2·G4+3·G3+G1` style rendering, top index first.
    pub fn render_symbolic(&self) -> String {
        self.render(|j| format!("G{j}"))
    }

    /// `93+2·30+3·10+1` style rendering with the term values spelled out.
    pub fn render_values(&self, cache: &SequenceCache) -> String {
        self.render(|j| cache.at(j).to_string())
    }

    fn render(&self, term: impl Fn(usize) -> String) -> String {
        if self.entries.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &(j, a)) in self.entries.iter().rev().enumerate() {
            if k > 0 {
                out.push('+');
            }
            if a > 1 {
                let _ = write!(out, "{a}·");
            }
            out.push_str(&term(j));
        }
        out
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Decomposition", 2)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

fn entries_from_top_down(digits: &[u32]) -> Vec<(usize, u32)> {
    let len = digits.len();
    let mut entries = Vec::with_capacity(digits.iter().filter(|&&a| a > 0).count());
    for (i, &a) in digits.iter().enumerate().rev() {
        if a > 0 {
            entries.push((len - i, a));
        }
    }
    entries
}

/// Greedy decomposition: repeatedly subtract the largest `G_j` not exceeding the
/// remainder. Legal exactly when the signature is monotone.
pub fn decompose_greedy(cache: &mut SequenceCache, value: &BigUint) -> Result<Decomposition, DecomposeError> {
    if !cache.plrs().is_monotone() {
        return Err(DecomposeError::NonMonotonePlrs);
    }
    let budget = cache.index_budget_for(value);
    cache.ensure(budget + 1);
    greedy_in(cache, value)
}

/// [`decompose_greedy`] against an already materialized cache.
pub fn greedy_in(cache: &SequenceCache, value: &BigUint) -> Result<Decomposition, DecomposeError> {
    if !cache.plrs().is_monotone() {
        return Err(DecomposeError::NonMonotonePlrs);
    }
    if value.is_zero() {
        return Ok(Decomposition::empty());
    }
    let top = top_index_in(cache, value)?;
    let entries = match value.to_u128() {
        Some(v) if top <= cache.small_len() => greedy_digits(cache.small_terms(), top, v),
        _ => greedy_digits(cache.terms_slice(), top, value.clone()),
    };
    Ok(Decomposition::from_parts(entries, value.clone()))
}

fn top_index_in(cache: &SequenceCache, value: &BigUint) -> Result<usize, DecomposeError> {
    let terms = cache.terms_slice();
    if terms.last().is_none_or(|g| g <= value) {
        return Err(DecomposeError::NotMaterialized { needed: terms.len() + 1 });
    }
    Ok(terms.partition_point(|g| g <= value))
}

fn greedy_digits<T>(terms: &[T], top: usize, mut rem: T) -> Vec<(usize, u32)>
where
    T: Clone + Ord + Zero + CheckedSub,
{
    let mut out = Vec::new();
    let mut j = top;
    while !rem.is_zero() {
        while terms[j - 1] > rem {
            j -= 1;
        }
        let mut a = 0u32;
        while terms[j - 1] <= rem {
            rem = rem.checked_sub(&terms[j - 1]).expect("term <= remainder");
            a += 1;
        }
        out.push((j, a));
    }
    out.reverse();
    out
}

/// Legality-aware top-down search for the unique legal string of `value` among
/// strings of `index_budget` digits. Works for every PLRS.
pub fn decompose_general(
    cache: &mut SequenceCache,
    value: &BigUint,
    index_budget: usize,
) -> Result<Decomposition, DecomposeError> {
    cache.ensure(index_budget + 1);
    general_in(cache, value, index_budget)
}

/// [`decompose_general`] against an already materialized cache.
pub fn general_in(
    cache: &SequenceCache,
    value: &BigUint,
    index_budget: usize,
) -> Result<Decomposition, DecomposeError> {
    let Some(limit) = cache.get(index_budget + 1) else {
        return Err(DecomposeError::NotMaterialized { needed: index_budget + 1 });
    };
    if value >= limit {
        return Err(DecomposeError::BudgetTooSmall { index_budget });
    }
    let automaton = BlockAutomaton::new(cache.plrs());
    let mut digits = Vec::with_capacity(index_budget);
    let mut found = Vec::new();
    let small =
        value.to_u128().filter(|_| cache.small_len() > index_budget && cache.small_bounds_table().len() > index_budget);
    match small {
        Some(v) => search(
            &automaton,
            cache.small_terms(),
            cache.small_bounds_table(),
            index_budget,
            0,
            v,
            &mut digits,
            &mut found,
        ),
        None => search(
            &automaton,
            cache.terms_slice(),
            cache.bounds_table(),
            index_budget,
            0,
            value.clone(),
            &mut digits,
            &mut found,
        ),
    }
    match found.len() {
        0 => Err(DecomposeError::NoLegalDecomposition),
        1 => {
            let d = &found[0];
            let len = d.len();
            let entries = d.iter().enumerate().rev().filter(|(_, &a)| a > 0).map(|(i, &a)| (len - i, a)).collect();
            Ok(Decomposition::from_parts(entries, value.clone()))
        }
        _ => Err(DecomposeError::MultipleLegalDecompositions),
    }
}

// Collects at most two solutions; `len` digits remain, weights G_len..G_1.
#[allow(clippy::too_many_arguments)]
fn search<T>(
    automaton: &BlockAutomaton<'_>,
    terms: &[T],
    bounds: &[Vec<T>],
    len: usize,
    state: usize,
    rem: T,
    digits: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) where
    T: Clone + Ord + Zero + CheckedSub + CheckedMul + From<u32>,
{
    if rem.is_zero() {
        // the only zero-valued completion is all zeros, which is always legal
        let mut d = digits.clone();
        d.resize(digits.len() + len, 0);
        found.push(d);
        return;
    }
    if len == 0 {
        return;
    }
    let g = &terms[len - 1];
    for d in (0..=automaton.max_digit(state)).rev() {
        let Some(next) = automaton.step(state, d) else { continue };
        let Some(cost) = g.checked_mul(&T::from(d)) else { continue };
        let Some(rest) = rem.checked_sub(&cost) else { continue };
        if rest > bounds[len - 1][next] {
            continue;
        }
        digits.push(d);
        search(automaton, terms, bounds, len - 1, next, rest, digits, found);
        digits.pop();
        if found.len() >= 2 {
            return;
        }
    }
}

/// Decomposes with the greedy algorithm when the signature is monotone and
/// with the general search otherwise.
pub fn decompose(cache: &mut SequenceCache, value: &BigUint) -> Result<Decomposition, DecomposeError> {
    let budget = cache.index_budget_for(value);
    cache.ensure(budget + 1);
    decompose_in(cache, value)
}

/// [`decompose`] against an already materialized cache.
pub fn decompose_in(cache: &SequenceCache, value: &BigUint) -> Result<Decomposition, DecomposeError> {
    if cache.plrs().is_monotone() {
        greedy_in(cache, value)
    } else if value.is_zero() {
        Ok(Decomposition::empty())
    } else {
        let budget = top_index_in(cache, value)?;
        general_in(cache, value, budget)
    }
}

/// Summand count of `value`, with a `u128` fast path for the greedy case.
pub fn summand_count_in(cache: &SequenceCache, value: &BigUint) -> Result<u64, DecomposeError> {
    decompose_in(cache, value).map(|d| d.summand_count())
}
