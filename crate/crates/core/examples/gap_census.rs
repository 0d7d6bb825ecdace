//! Integers without a long gap: exact counts, roots and decay.
//!
//! cargo run --release --example gap_census -- 1,1 3

use plrs::census::{char_poly_roots, decay_report, h_recurrence, verify_against_bruteforce, GapConvention};
use plrs::{Plrs, SequenceCache};

fn main() {
    let mut args = std::env::args().skip(1);
    let coeffs: Vec<i64> = args
        .next()
        .unwrap_or_else(|| "1,1".into())
        .split(',')
        .map(|c| c.trim().parse().expect("integer coefficient"))
        .collect();
    let z: usize = args.next().map_or(3, |s| s.parse().expect("Z"));
    let plrs = Plrs::new(&coeffs).unwrap_or_else(|e| panic!("{e}"));
    let mut cache = SequenceCache::new(plrs.clone());

    let table = h_recurrence(&mut cache, z, 120, GapConvention::BetweenSummands).unwrap();
    let bad = verify_against_bruteforce(&mut cache, &table, 16).unwrap();
    println!("recurrence vs enumeration up to n = 16: {} mismatches", bad.len());
    for row in table.rows.iter().step_by(10) {
        println!("n {:>4}  H_n {:>30}  H_n/G_n {:.6e}", row.n, row.h, row.ratio);
    }
    let roots = char_poly_roots(&plrs, z, Some(&table)).unwrap();
    println!(
        "lambda {:.10}  omega_hat {:.10}  empirical {:.10}",
        roots.lambda,
        roots.omega_hat,
        roots.empirical_rate.unwrap()
    );
    let decay = decay_report(&table, &roots).unwrap();
    println!("slope {:.6}  predicted {:.6}  pass {}", decay.slope, decay.predicted, decay.pass);
}
