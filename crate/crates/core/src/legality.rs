//! Legality of coefficient strings and enumeration of legal strings.
//!
//! Coefficient strings here are written top index first: `digits[0]` multiplies
//! `G_len`, `digits[len - 1]` multiplies `G_1`. [`crate::Decomposition`] stores the
//! reverse (ascending) order; use [`crate::Decomposition::to_top_down`] to convert.
//!
//! Two independent routes decide legality:
//!
//! * [`is_legal`] transcribes the block definition recursively (a block
//!   `c_1, ..., c_{s-1}, a_s` with `a_s < c_s`, then zeros, then a legal tail;
//!   or a proper prefix of `c_1..c_L` on its own).
//! * [`BlockAutomaton`] reads the string left to right, tracking how much of
//!   `c_1..c_L` the current block has matched. Enumeration and all counting
//!   dynamic programs run on the automaton.

use crate::system::Plrs;

/// Automaton state `j` means the current block has matched `c_1..c_j` so far.
/// State 0 is a block boundary.
#[derive(Debug, Clone, Copy)]
pub struct BlockAutomaton<'a> {
    coeffs: &'a [u32],
}

impl<'a> BlockAutomaton<'a> {
    pub fn new(plrs: &'a Plrs) -> Self {
        BlockAutomaton { coeffs: plrs.coeffs() }
    }

    pub fn states(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest digit readable from `state` (`c_{state+1}`).
    pub fn max_digit(&self, state: usize) -> u32 {
        self.coeffs[state]
    }

    /// Transition on `digit`, or `None` if the digit makes the string illegal.
    #[inline]
    pub fn step(&self, state: usize, digit: u32) -> Option<usize> {
        let c = self.coeffs[state];
        if digit < c {
            Some(0)
        } else if digit == c && state + 1 < self.coeffs.len() {
            Some(state + 1)
        } else {
            None
        }
    }

    /// Runs the automaton over a top-down string. Every state is accepting.
    pub fn accepts(&self, digits: &[u32]) -> bool {
        digits.iter().try_fold(0usize, |s, &d| self.step(s, d)).is_some()
    }
}

/// Outcome of a legality check, keeping the empty-string convention visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Legality {
    pub legal: bool,
    /// The input was empty (the value 0). It is legal by convention only; the
    /// definition itself covers positive integers.
    pub empty_by_convention: bool,
}

/// Legality verdict for a top-down coefficient string; see [`is_legal`].
pub fn check_legality(plrs: &Plrs, digits: &[u32]) -> Legality {
    if digits.is_empty() {
        return Legality { legal: true, empty_by_convention: true };
    }
    Legality { legal: is_legal(plrs, digits), empty_by_convention: false }
}

/// Recursive legality check of a top-down coefficient string.
///
/// A non-empty string must start with a positive coefficient. The empty string
/// (the value 0) is reported legal.
pub fn is_legal(plrs: &Plrs, digits: &[u32]) -> bool {
    match digits.first() {
        None => true,
        Some(0) => false,
        Some(_) => {
            let mut memo = vec![None; digits.len() + 1];
            legal_tail(plrs.coeffs(), digits, 0, &mut memo)
        }
    }
}

// Legality of digits[start..], where the tail may begin with zeros (the `s = 0`
// branch of the block rule, equivalently the zero run after the previous block).
fn legal_tail(c: &[u32], digits: &[u32], start: usize, memo: &mut [Option<bool>]) -> bool {
    if let Some(v) = memo[start] {
        return v;
    }
    let a = &digits[start..];
    let l = c.len();
    let verdict = if a.is_empty() {
        true
    } else if a[0] == 0 {
        // leading zeros belong to the run between blocks
        legal_tail(c, digits, start + 1, memo)
    } else if a.len() < l && a == &c[..a.len()] {
        // a proper prefix of c_1..c_L standing alone
        true
    } else {
        let mut ok = false;
        for s in 1..=l.min(a.len()) {
            if a[..s - 1] != c[..s - 1] {
                break;
            }
            if a[s - 1] < c[s - 1] && legal_tail(c, digits, start + s, memo) {
                ok = true;
                break;
            }
        }
        ok
    };
    memo[start] = Some(verdict);
    verdict
}

/// Cursor over all legal strings of a fixed length in lexicographic order,
/// starting at the all-zero string. Values are tracked incrementally in `u128`.
///
/// Lexicographic order coincides with numeric order, so the `k`-th string
/// visited (counting from 0) has value `k`.
#[derive(Debug, Clone)]
pub struct LegalStrings<'a> {
    automaton: BlockAutomaton<'a>,
    // terms[i] = G_{len - i}, weight of digits[i]
    weights: Vec<u128>,
    digits: Vec<u32>,
    // states[i] = automaton state before reading digits[i]; states[len] is final
    states: Vec<usize>,
    // prefix[i] = value of digits[..i]
    prefix: Vec<u128>,
    started: bool,
    exhausted: bool,
}

impl<'a> LegalStrings<'a> {
    /// `terms` must hold `G_1..=G_len` (ascending), all below 2^127.
    pub fn new(plrs: &'a Plrs, terms_ascending: &[u128], len: usize) -> Self {
        assert!(terms_ascending.len() >= len, "need G_1..G_len");
        let weights: Vec<u128> = (0..len).map(|i| terms_ascending[len - 1 - i]).collect();
        LegalStrings {
            automaton: BlockAutomaton::new(plrs),
            weights,
            digits: vec![0; len],
            states: vec![0; len + 1],
            prefix: vec![0; len + 1],
            started: false,
            exhausted: false,
        }
    }

    /// Moves to the next legal string; returns false when exhausted. The first
    /// call positions the cursor on the all-zero string.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if !self.started {
            self.started = true;
            self.refill_from(0);
            return true;
        }
        let len = self.digits.len();
        for i in (0..len).rev() {
            let next = self.digits[i] + 1;
            if next <= self.automaton.max_digit(self.states[i]) {
                if let Some(ns) = self.automaton.step(self.states[i], next) {
                    self.digits[i] = next;
                    self.states[i + 1] = ns;
                    self.prefix[i + 1] = self.prefix[i] + self.weights[i] * u128::from(next);
                    self.refill_from(i + 1);
                    return true;
                }
            }
        }
        self.exhausted = true;
        false
    }

    // zeros are always readable
    fn refill_from(&mut self, from: usize) {
        for i in from..self.digits.len() {
            self.digits[i] = 0;
            self.states[i + 1] = self.automaton.step(self.states[i], 0).expect("zero is always legal");
            self.prefix[i + 1] = self.prefix[i];
        }
    }

    /// Current top-down digits.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn value(&self) -> u128 {
        self.prefix[self.digits.len()]
    }
}
