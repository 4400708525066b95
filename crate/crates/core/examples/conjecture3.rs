//! Transition coefficients of the Busy Beaver shift champions.

use translab::experiments::{conjecture3_report, CoefficientParams};

fn main() {
    let report = conjecture3_report(2, &CoefficientParams::default()).unwrap();
    print!("{report}");
}
