//! Rule 110 from a single live cell, printed as text.
//!
//! Run with `cargo run --example eca_evolve -- 30 24` to pick another rule
//! and step count.

use translab::bits::BitString;
use translab::eca::{evolve, EcaRule};

fn main() {
    let mut args = std::env::args().skip(1);
    let rule: u8 = args
        .next()
        .map_or(110, |a| a.parse().expect("rule in 0..=255"));
    let steps: usize = args.next().map_or(16, |a| a.parse().expect("step count"));

    let init: BitString = "1".parse().unwrap();
    let diagram = evolve(EcaRule::new(rule), &init, steps);
    let left = -(steps as i64);
    for t in 0..=steps {
        let row: String = (left..=steps as i64)
            .map(|x| if diagram.cell(t, x) == 1 { '#' } else { '.' })
            .collect();
        println!("{t:3} {row}");
    }
    println!("serialized length: {}", diagram.serialize().len());
}
