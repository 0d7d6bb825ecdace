//! Terms of a few recurrences and their growth rates.
//!
//! cargo run --example sequence_terms -- 2,3,1 12

use plrs::census::g_dominant_root;
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut args = std::env::args().skip(1);
    let coeffs: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,1".into())
        .split(',')
        .map(|c| c.trim().parse().expect("integer coefficient"))
        .collect();
    let n: usize = args.next().map_or(15, |s| s.parse().expect("term count"));

    let plrs = Plrs::new(&coeffs).unwrap_or_else(|e| panic!("{e}"));
    let mut cache = SequenceCache::new(plrs.clone());
    println!("signature {}  monotone {}", plrs.signature(), plrs.is_monotone());
    for k in 1..=n {
        println!("G_{k:<3} {}", cache.term(k));
    }
    let lambda = g_dominant_root(&plrs);
    let last = cache.term(n).clone();
    let prev = cache.term(n - 1).clone();
    println!("lambda {lambda:.12}  G_n/G_(n-1) {:.12}", plrs::stats::ratio(&last, &prev));
}
