//! How often C2 holds a zero run of length 3L, as the window widens.

use plrs::interval::{gap_probability_estimate, IntervalParams};
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut cache = SequenceCache::new(Plrs::fibonacci());
    for (n, alpha, q) in [(60, 30, 10), (200, 100, 30), (400, 200, 60), (600, 200, 120), (800, 300, 200)] {
        let params = IntervalParams::new(n, alpha, q).unwrap();
        let g = gap_probability_estimate(&mut cache, params, 4000, 0, 4).unwrap();
        println!("n {n:>4}  alpha {alpha:>4}  q {q:>4}  fraction {:.4}", g.fraction);
    }
}
