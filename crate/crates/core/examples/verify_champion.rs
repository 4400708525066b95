//! Checks a published 4-state champion by simulation.

use translab::busy_beaver::verify;
use translab::turing::{run, TapeState, TuringMachine};

const CHAMPION: &str = "\
A0 -> 1RB
A1 -> 1LB
B0 -> 1LA
B1 -> 0LC
C0 -> 1RH
C1 -> 1LD
D0 -> 1RD
D1 -> 0RA
";

fn main() {
    let m: TuringMachine = CHAMPION.parse().unwrap();
    let r = run(&m, TapeState::blank(), 1_000);
    println!(
        "{}: halted={} steps={} ones={}",
        m.compact(),
        r.halted,
        r.steps,
        r.ones
    );
    println!("verify(13, 107) = {}", verify(&m, 13, 107));
    println!("verify(13, 108) = {}", verify(&m, 13, 108));
}
