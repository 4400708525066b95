//! A Turing machine on a periodic background instead of a blank tape.

use translab::bits::BitString;
use translab::coefficient::transition_coefficient;
use translab::turing::{run, spacetime, Background, TapeState, TmSystem, TuringMachine};

fn main() {
    let m = TuringMachine::from_compact("1RB1LB_1LA1RH").unwrap();
    let word: BitString = "01".parse().unwrap();
    let background = Background::periodic(&word, 0);

    let blank = run(&m, TapeState::blank(), 100);
    let striped = run(
        &m,
        TapeState::with_input(&BitString::default(), background.clone()),
        100,
    );
    println!(
        "blank tape:    halted={} steps={}",
        blank.halted, blank.steps
    );
    println!(
        "periodic tape: halted={} steps={}",
        striped.halted, striped.steps
    );

    let rows = spacetime(
        &m,
        TapeState::with_input(&BitString::default(), background.clone()),
        8,
    );
    let width = rows.len() / 8;
    for row in rows.chunks(width) {
        println!("  {}", String::from_utf8_lossy(row));
    }

    let system = TmSystem::new(m.clone(), m.compact()).with_background(background);
    let c = transition_coefficient(&system, 16, &[20, 40, 60]).unwrap();
    println!("C on periodic background: {:+.6}", c.value());
}
