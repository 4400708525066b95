//! The initial conditions fed to every system: lengths 1, 2, 3, ... each
//! listed in reflected Gray order.

use translab::enumeration::{enumerate, InitialConditionIndex};

fn main() {
    for (i, s) in enumerate(14).iter().enumerate() {
        let idx = InitialConditionIndex::from_global(i as u64 + 1);
        println!("{:2}  len {}  rank {}  {s}", idx.j, idx.length, idx.rank);
    }
}
