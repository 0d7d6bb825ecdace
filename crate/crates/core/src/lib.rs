//! Generalized Zeckendorf decompositions over positive linear recurrence
//! sequences (PLRS).
//!
//! A PLRS is `G_{n+1} = c_1 G_n + ... + c_L G_{n+1-L}` with `G_1 = 1` and
//! `G_{n+1} = c_1 G_n + ... + c_n G_1 + 1` for `n < L`. Every non-negative
//! integer has exactly one legal decomposition `sum a_j G_j`.
//!
//! The crate is organized by capability:
//!
//! * [`system`]: signatures ([`Plrs`]) and big-integer term caches ([`SequenceCache`]).
//! * [`legality`] and [`decomposition`]: legality checks, enumeration, greedy and
//!   general decomposition.
//! * [`interval`]: block splits `C1/C2/C3`, the truncation map onto `[0, G_alpha)`,
//!   exact and sampled summand-count distributions, subinterval experiments.
//! * [`census`]: counts of integers with no large gap, their recurrence and the
//!   dominant-root comparison.
//! * [`stats`]: normal CDF, KS distances, histograms.
//! * [`cli`]: the `plrs` command-line front end.
//!
//! See `examples/` for one runnable program per capability.

pub mod census;
pub mod cli;
pub mod decomposition;
pub mod interval;
pub mod legality;
pub mod stats;
pub mod system;

pub use decomposition::{decompose, decompose_general, decompose_greedy, DecomposeError, Decomposition};
pub use legality::{is_legal, BlockAutomaton, LegalStrings};
pub use stats::{normal_cdf, DistributionSummary, Histogram};
pub use system::{Plrs, PlrsError, SequenceCache};

use num_bigint::BigUint;

/// Every legal decomposition with top index at most `max_index`, in
/// lexicographic order of the top-down coefficient string. Values run through
/// `1..G_{max_index+1}` in increasing order.
///
/// Terms up to `G_{max_index}` must fit in 127 bits.
pub fn enumerate_legal(cache: &mut SequenceCache, max_index: usize) -> impl Iterator<Item = Decomposition> + '_ {
    cache.ensure(max_index + 1);
    assert!(cache.small_terms().len() > max_index, "enumeration range exceeds u128");
    let cache: &SequenceCache = cache;
    let mut cursor = LegalStrings::new(cache.plrs(), cache.small_terms(), max_index);
    cursor.advance(); // skip the all-zero string
    std::iter::from_fn(move || {
        if cursor.advance() {
            Some(Decomposition::from_top_down_valued(cursor.digits(), BigUint::from(cursor.value())))
        } else {
            None
        }
    })
}
