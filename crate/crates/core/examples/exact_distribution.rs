//! Exact summand-count distributions and their distance to the normal.
//!
//! cargo run --release --example exact_distribution -- 1,1 400

use num_bigint::BigUint;
use plrs::interval::{exact_count_distribution, histogram_over_interval, IntervalMode};
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut args = std::env::args().skip(1);
    let coeffs: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,1".into())
        .split(',')
        .map(|c| c.trim().parse().expect("integer coefficient"))
        .collect();
    let k_max: usize = args.next().map_or(400, |s| s.parse().expect("index"));
    let plrs = Plrs::new(&coeffs).unwrap_or_else(|e| panic!("{e}"));

    println!("{:>5} {:>12} {:>12} {:>10} {:>10}", "k", "mean", "variance", "ks", "ks_raw");
    let mut k = 25;
    while k <= k_max {
        let s = exact_count_distribution(&plrs, k);
        println!("{k:>5} {:>12.4} {:>12.4} {:>10.6} {:>10.6}", s.mean, s.variance, s.ks, s.ks_raw);
        k *= 2;
    }

    // the same machinery on [G_n, G_{n+1}), compared with a walk
    let mut cache = SequenceCache::new(plrs);
    let lo = cache.term(22).clone();
    let len: BigUint = cache.term(23) - &lo;
    let exact = histogram_over_interval(&mut cache, &lo, &len, IntervalMode::Exact, 1).unwrap();
    let walked =
        histogram_over_interval(&mut cache, &lo, &len, IntervalMode::Exhaustive { budget: 1 << 24 }, 4).unwrap();
    assert_eq!(exact.histogram, walked.histogram);
    println!("[G_22, G_23): {} integers, mean {:.4}, ks {:.6}", exact.total, exact.mean, exact.ks);
}
