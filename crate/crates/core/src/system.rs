//! Recurrence signatures and their term sequences.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlrsError {
    #[error("EmptyCoefficients: the recurrence needs at least one coefficient")]
    EmptyCoefficients,
    #[error("NonPositiveLeading: c_1 = {0} must be positive")]
    NonPositiveLeading(i64),
    #[error("NonPositiveTrailing: c_L = {0} must be positive")]
    NonPositiveTrailing(i64),
    #[error("NegativeCoefficient: c_{index} = {value} is negative")]
    NegativeCoefficient { index: usize, value: i64 },
    #[error("CoefficientTooLarge: c_{index} = {value} does not fit in 32 bits")]
    CoefficientTooLarge { index: usize, value: i64 },
    #[error("DegenerateRecurrence: G_(n+1) = G_n never grows, nothing is representable")]
    Degenerate,
}

/// A positive linear recurrence `G_{n+1} = c_1 G_n + ... + c_L G_{n+1-L}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plrs {
    coeffs: Vec<u32>,
    monotone: bool,
    max_coeff: u32,
}

impl Plrs {
    /// Validates a raw coefficient list `c_1..c_L`.
    pub fn new(coeffs: &[i64]) -> Result<Self, PlrsError> {
        let (&first, &last) = match (coeffs.first(), coeffs.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(PlrsError::EmptyCoefficients),
        };
        if first <= 0 {
            return Err(PlrsError::NonPositiveLeading(first));
        }
        if last <= 0 {
            return Err(PlrsError::NonPositiveTrailing(last));
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            if c < 0 {
                return Err(PlrsError::NegativeCoefficient { index: i + 1, value: c });
            }
            let c = u32::try_from(c).map_err(|_| PlrsError::CoefficientTooLarge { index: i + 1, value: c })?;
            out.push(c);
        }
        if out == [1] {
            return Err(PlrsError::Degenerate);
        }
        let monotone = out.windows(2).all(|w| w[0] >= w[1]) && out.iter().all(|&c| c >= 1);
        let max_coeff = *out.iter().max().expect("non-empty");
        Ok(Plrs { coeffs: out, monotone, max_coeff })
    }

    pub fn fibonacci() -> Self {
        Plrs::new(&[1, 1]).expect("valid signature")
    }

    /// Recurrence length `L`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_1..c_L`, with `coeffs()[0] == c_1`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `c_i` using the 1-based index.
    pub fn c(&self, i: usize) -> u32 {
        self.coeffs[i - 1]
    }

    /// True iff `c_1 >= c_2 >= ... >= c_L >= 1`; greedy decomposition is legal exactly then.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// `K = max_j c_j`.
    pub fn max_coeff(&self) -> u32 {
        self.max_coeff
    }

    pub fn coeff_sum(&self) -> u64 {
        self.coeffs.iter().map(|&c| u64::from(c)).sum()
    }

    /// Comma separated signature, as accepted by the CLI.
    pub fn signature(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Append-only cache of the terms `G_1, G_2, ...` of a [`Plrs`].
///
/// Extending needs `&mut self`; once materialized, terms can be read through a
/// shared reference from any number of threads.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    plrs: Plrs,
    terms: Vec<BigUint>,
    // Shadow copy of the prefix of `terms` that fits in 128 bits.
    small: Vec<u128>,
    // bounds[len][state]: largest value of a legal completion of `len` digits
    // read from automaton `state`.
    bounds: Vec<Vec<BigUint>>,
    bounds_small: Vec<Vec<u128>>,
}

impl SequenceCache {
    pub fn new(plrs: Plrs) -> Self {
        let states = plrs.len();
        let mut cache = SequenceCache {
            plrs,
            terms: Vec::new(),
            small: Vec::new(),
            bounds: vec![vec![BigUint::zero(); states]],
            bounds_small: vec![vec![0; states]],
        };
        cache.ensure(1);
        cache
    }

    pub fn plrs(&self) -> &Plrs {
        &self.plrs
    }

    /// Number of materialized terms.
    pub fn materialized(&self) -> usize {
        self.terms.len()
    }

    /// Materializes `G_1..=G_n`.
    pub fn ensure(&mut self, n: usize) {
        while self.terms.len() < n {
            // next index is len+1; with k = len, G_{k+1} uses G_k..G_1
            let k = self.terms.len();
            let next = if k == 0 {
                BigUint::one()
            } else {
                let l = self.plrs.len();
                let mut acc = BigUint::zero();
                for (i, &c) in self.plrs.coeffs().iter().enumerate().take(k.min(l)) {
                    if c != 0 {
                        acc += &self.terms[k - 1 - i] * c;
                    }
                }
                if k < l {
                    acc += 1u32;
                }
                acc
            };
            if self.small.len() == self.terms.len() {
                if let Some(v) = next.to_u128() {
                    self.small.push(v);
                }
            }
            self.terms.push(next);
            self.push_bounds();
        }
    }

    fn push_bounds(&mut self) {
        let len = self.terms.len();
        let g = &self.terms[len - 1];
        let prev = &self.bounds[len - 1];
        let coeffs = self.plrs.coeffs();
        let l = coeffs.len();
        let row: Vec<BigUint> = (0..l)
            .map(|s| {
                let c = coeffs[s];
                let mut best = BigUint::zero();
                if c >= 1 {
                    best = g * (c - 1) + &prev[0];
                }
                if s + 1 < l {
                    let v = g * c + &prev[s + 1];
                    best = best.max(v);
                }
                best
            })
            .collect();
        if self.bounds_small.len() == self.bounds.len() {
            if let Some(small) = row.iter().map(|v| v.to_u128()).collect::<Option<Vec<_>>>() {
                self.bounds_small.push(small);
            }
        }
        self.bounds.push(row);
    }

    /// Largest value of a legal completion of `len` digits from `state`.
    #[cfg(test)]
    pub(crate) fn bound(&self, len: usize, state: usize) -> &BigUint {
        &self.bounds[len][state]
    }

    pub(crate) fn bounds_table(&self) -> &[Vec<BigUint>] {
        &self.bounds
    }

    pub(crate) fn small_bounds_table(&self) -> &[Vec<u128>] {
        &self.bounds_small
    }

    pub(crate) fn terms_slice(&self) -> &[BigUint] {
        &self.terms
    }

    pub(crate) fn small_terms(&self) -> &[u128] {
        &self.small
    }

    /// `G_n`, extending the cache if needed.
    pub fn term(&mut self, n: usize) -> &BigUint {
        assert!(n >= 1, "sequence indices start at 1");
        self.ensure(n);
        &self.terms[n - 1]
    }

    /// `G_n` if it has already been materialized.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    /// `G_n`; panics if `n` has not been materialized.
    pub fn at(&self, n: usize) -> &BigUint {
        self.get(n).unwrap_or_else(|| panic!("G_{n} not materialized"))
    }

    #[cfg(test)]
    pub(crate) fn small_at(&self, n: usize) -> Option<u128> {
        n.checked_sub(1).and_then(|i| self.small.get(i)).copied()
    }

    /// Largest index whose term fits in a `u128`, within the materialized range.
    pub(crate) fn small_len(&self) -> usize {
        self.small.len()
    }

    /// The unique `n` with `G_n <= value < G_{n+1}`.
    pub fn find_top_index(&mut self, value: &BigUint) -> Result<usize, crate::decomposition::DecomposeError> {
        if value.is_zero() {
            return Err(crate::decomposition::DecomposeError::ZeroOrNegativeInput);
        }
        while self.terms.last().expect("G_1 present") <= value {
            let n = self.terms.len();
            self.ensure(n + 1);
        }
        // terms[len-1] > value >= terms[0]
        let idx = self.terms.partition_point(|g| g <= value);
        Ok(idx)
    }

    /// Smallest `k` such that `value < G_{k+1}`, i.e. the length of the legal
    /// string of `value` (0 for zero).
    pub fn index_budget_for(&mut self, value: &BigUint) -> usize {
        if value.is_zero() {
            0
        } else {
            self.find_top_index(value).expect("positive")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(coeffs: &[i64], n: usize) -> Vec<u64> {
        let mut cache = SequenceCache::new(Plrs::new(coeffs).unwrap());
        (1..=n).map(|i| cache.term(i).to_u64().unwrap()).collect()
    }

    #[test]
    fn validation_flags() {
        let fib = Plrs::new(&[1, 1]).unwrap();
        assert_eq!(fib.len(), 2);
        assert!(fib.is_monotone());
        assert_eq!(fib.max_coeff(), 1);

        let p = Plrs::new(&[2, 3, 1]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(!p.is_monotone());
        assert_eq!(p.max_coeff(), 3);

        assert!(!Plrs::new(&[2, 0, 1]).unwrap().is_monotone());
        assert!(Plrs::new(&[3, 2, 1]).unwrap().is_monotone());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Plrs::new(&[]), Err(PlrsError::EmptyCoefficients));
        assert_eq!(Plrs::new(&[0, 1]), Err(PlrsError::NonPositiveLeading(0)));
        assert_eq!(Plrs::new(&[1, 0]), Err(PlrsError::NonPositiveTrailing(0)));
        assert_eq!(Plrs::new(&[1, -1, 1]), Err(PlrsError::NegativeCoefficient { index: 2, value: -1 }));
        assert_eq!(Plrs::new(&[1]), Err(PlrsError::Degenerate));
    }

    #[test]
    fn initial_terms() {
        assert_eq!(terms(&[1, 1], 6), vec![1, 2, 3, 5, 8, 13]);
        assert_eq!(terms(&[2, 3, 1], 5), vec![1, 3, 10, 30, 93]);
        assert_eq!(terms(&[3, 2, 1], 4), vec![1, 4, 15, 54]);
        assert_eq!(terms(&[2], 4), vec![1, 2, 4, 8]);
    }

    #[test]
    fn term_is_idempotent() {
        let mut cache = SequenceCache::new(Plrs::fibonacci());
        let a = cache.term(90).clone();
        let b = cache.term(90).clone();
        assert_eq!(a, b);
        assert_eq!(cache.term(10).to_u64(), Some(89));
    }

    #[test]
    fn small_shadow_tracks_terms() {
        let mut cache = SequenceCache::new(Plrs::fibonacci());
        cache.ensure(300);
        assert!(cache.small_len() > 150 && cache.small_len() < 300);
        for n in 1..=cache.small_len() {
            assert_eq!(BigUint::from(cache.small_at(n).unwrap()), *cache.at(n));
        }
    }

    #[test]
    fn completion_bounds() {
        let mut cache = SequenceCache::new(Plrs::fibonacci());
        cache.ensure(20);
        // from a block boundary the largest completion of len digits is G_{len+1} - 1
        for len in 1..19 {
            assert_eq!(*cache.bound(len, 0), cache.at(len + 1) - 1u32);
        }
        // after a summand the next digit is forced to zero
        assert_eq!(*cache.bound(3, 1), cache.at(3) - 1u32);
    }

    #[test]
    fn top_index() {
        let mut fib = SequenceCache::new(Plrs::fibonacci());
        assert_eq!(fib.find_top_index(&BigUint::from(10u32)).unwrap(), 5);
        assert_eq!(fib.find_top_index(&BigUint::from(1u32)).unwrap(), 1);
        assert_eq!(fib.find_top_index(&BigUint::from(13u32)).unwrap(), 6);
        assert!(fib.find_top_index(&BigUint::zero()).is_err());

        let mut p = SequenceCache::new(Plrs::new(&[2, 3, 1]).unwrap());
        assert_eq!(p.find_top_index(&BigUint::from(92u32)).unwrap(), 4);
        assert_eq!(p.find_top_index(&BigUint::from(93u32)).unwrap(), 5);
    }
}
