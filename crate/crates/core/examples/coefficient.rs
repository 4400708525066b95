//! Characteristic exponents and transition coefficient for a few rules.

use translab::coefficient::{transition_series, EcaSystem, DEFAULT_SCHEDULE};
use translab::eca::EcaRule;

fn main() {
    let n = 32;
    for rule in [0u8, 4, 30, 54, 90, 110] {
        let series =
            transition_series(&EcaSystem(EcaRule::new(rule)), n, &DEFAULT_SCHEDULE).unwrap();
        let c = series.coefficient().unwrap();
        let samples: Vec<String> = series
            .samples
            .iter()
            .map(|(t, v)| format!("c({t})={v:.4}"))
            .collect();
        println!(
            "rule {rule:3}  C = {:+.6}  {}",
            c.value(),
            samples.join(" ")
        );
    }
}
