//! Ranks all 256 rules at the default parameters, partitions them at the
//! three largest gaps and checks the ordinal claims. Takes a few seconds in
//! release mode.

use translab::coefficient::{DEFAULT_N, DEFAULT_SCHEDULE};
use translab::experiments::{classify_all, conjecture1_report, ordinal_claims};

fn main() {
    let report = classify_all(DEFAULT_N, &DEFAULT_SCHEDULE).unwrap();
    for e in report.entries.iter().take(15) {
        println!("{:3}  rule {:3}  {:+.6}", e.rank, e.rule, e.coefficient);
    }
    let sizes: Vec<usize> = report.partition.iter().map(Vec::len).collect();
    println!("cluster sizes {sizes:?} degenerate={}", report.degenerate);
    for claim in ordinal_claims(&report) {
        println!(
            "[{}] {}: {}",
            if claim.holds { "yes" } else { "no" },
            claim.name,
            claim.detail
        );
    }
    print!("{}", conjecture1_report(&report));
}
