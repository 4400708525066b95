//! Exhaustive Busy Beaver search for 1, 2 and 3 states.

use std::time::Instant;

use translab::busy_beaver::{default_cutoff, search};

fn main() {
    for states in 1..=3 {
        let started = Instant::now();
        let r = search(states, default_cutoff(states));
        println!(
            "n={states}  sigma={} shift={}  halting={} nonhalting={} undecided={}  ({:.2?})",
            r.sigma,
            r.shift,
            r.halting_count,
            r.nonhalting_count,
            r.undecided_count,
            started.elapsed()
        );
        for m in &r.shift_champions {
            println!("  shift champion {}", m.compact());
        }
    }
}
