//! Block-lemma checks on subintervals [m, m + G_alpha).
//!
//! cargo run --release --example subinterval_lemmas

use plrs::interval::{run_subinterval_batch, IntervalParams, WalkConfig};
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut cache = SequenceCache::new(Plrs::fibonacci());
    let params = IntervalParams::new(40, 20, 8).unwrap();
    let batch = run_subinterval_batch(&mut cache, params, 200, 1, 4, WalkConfig::default()).unwrap();
    for r in batch.reports.iter().filter(|r| r.zero_run_found).take(10) {
        let d = r.distribution.as_ref().unwrap();
        println!(
            "m = {}  visited {}  s-error in [{}, {}] (bound {})  bijective {}  mean {:.3}  ks {:.4}",
            r.m,
            r.visited,
            r.shift_error_min.unwrap(),
            r.shift_error_max.unwrap(),
            r.shift_error_bound,
            r.bijection_verified,
            d.mean,
            d.ks
        );
    }
    let a = &batch.aggregate;
    println!(
        "{} of {} passed the gate; median ks {:.4}; violations: c3 {} shift {} bijection {}",
        a.passing,
        a.samples,
        a.median_ks.unwrap_or(f64::NAN),
        a.c3_failures,
        a.shift_bound_violations,
        a.bijection_failures
    );
}
