//! An interval where the summand count is bimodal, next to a typical one of
//! the same length.

use plrs::interval::{counterexample_interval, random_passing_interval};
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut cache = SequenceCache::new(Plrs::fibonacci());
    for n in [16, 40, 100] {
        let r = counterexample_interval(&mut cache, n).unwrap();
        let d = &r.distribution;
        println!("n {n}: [{}, {}) length {}", r.lo, r.hi, r.length);
        println!("  bimodal {}  ks {:.4}  histogram {:?}", d.bimodal, d.ks, d.histogram.to_u64_pairs());
    }
    let r = counterexample_interval(&mut cache, 100).unwrap();
    let p = random_passing_interval(&mut cache, 200, &r.length, 0).unwrap();
    println!(
        "typical [m, m + {}) with m = {}: bimodal {}  ks {:.4}",
        p.length, p.m, p.distribution.bimodal, p.distribution.ks
    );
}
