//! Which coefficient strings are legal, checked two ways.

use plrs::legality::check_legality;
use plrs::{BlockAutomaton, Plrs};

fn main() {
    let plrs = Plrs::new(&[2, 3, 1]).unwrap();
    let automaton = BlockAutomaton::new(&plrs);
    // top-down strings: a_5 a_4 a_3 a_2 a_1
    let cases: [&[u32]; 6] =
        [&[1, 2, 3, 0, 1], &[1, 2, 3, 1, 0], &[7, 0, 0, 2, 0], &[1, 3, 0, 0, 0], &[2, 3, 1], &[2, 3, 0, 2]];
    for digits in cases {
        let verdict = check_legality(&plrs, digits);
        println!("{:?}  legal {}  automaton {}", digits, verdict.legal, automaton.accepts(digits));
    }
}
