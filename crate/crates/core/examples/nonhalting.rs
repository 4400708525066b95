//! Non-halting certificates for a handful of machines.

use translab::busy_beaver::nonhalt_certificate;
use translab::turing::TuringMachine;

fn main() {
    for compact in [
        "1RA1RA",
        "0LA0LA",
        "0RB0RB_0LA0LA",
        "1RB1LA_1LA1RC_1RH1RB",
        "1RB0LC_1LB1RA_1RH1LA",
        "1RB1LB_1LA1RH",
    ] {
        let m = TuringMachine::from_compact(compact).unwrap();
        match nonhalt_certificate(&m, 1_000) {
            Some(c) => println!("{compact:24} {c:?}"),
            None => println!("{compact:24} no certificate"),
        }
    }
}
