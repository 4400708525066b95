//! Smallest machines producing short strings, and how long they take.

use translab::bits::BitString;
use translab::busy_beaver::logical_depth_estimate;

fn main() {
    for target in ["1", "11", "111", "101", "1111", "0"] {
        let t: BitString = target.parse().unwrap();
        let d = logical_depth_estimate(&t, 2, 1_000);
        match (&d.witness, d.depth_steps, d.best_description_bits) {
            (Some(m), Some(steps), Some(bits)) => {
                println!(
                    "{target:>5}: {bits} bits, {steps} steps via {}",
                    m.compact()
                )
            }
            _ => println!("{target:>5}: not produced by any machine with at most 2 states"),
        }
    }
}
