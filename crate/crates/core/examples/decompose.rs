//! Decompose integers, including ones far beyond 64 bits.
//!
//! cargo run --example decompose -- 2,3,1 184

use num_bigint::BigUint;
use plrs::{decompose, decompose_general, Plrs, SequenceCache};

fn main() {
    let mut args = std::env::args().skip(1);
    let coeffs: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,1".into())
        .split(',')
        .map(|c| c.trim().parse().expect("integer coefficient"))
        .collect();
    let values: Vec<BigUint> = match args.next() {
        Some(v) => vec![v.parse().expect("non-negative integer")],
        None => vec![100u32.into(), 12345u32.into(), BigUint::from(10u32).pow(60)],
    };

    let plrs = Plrs::new(&coeffs).unwrap_or_else(|e| panic!("{e}"));
    let mut cache = SequenceCache::new(plrs);
    for v in values {
        let d = decompose(&mut cache, &v).unwrap();
        println!("{v}");
        println!("  {}", d.render_symbolic());
        println!("  {}", d.render_values(&cache));
        println!("  summands {}  gaps {:?}", d.summand_count(), d.gap_lengths());
        // the search-based decomposer works for every signature
        let budget = cache.index_budget_for(&v);
        assert_eq!(decompose_general(&mut cache, &v, budget).unwrap(), d);
    }
}
