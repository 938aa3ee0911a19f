//! Discrete area, volume and Willmore energy of prolate spheroids against
//! their closed forms, for a range of node counts.
//!
//! cargo run --release --example spheroid_oracle [a]

use isoflow::spheroid::{discretization_errors, SpheroidParam};

fn main() {
    let a: f64 = std::env::args().nth(1).map_or(0.5, |v| v.parse().expect("a must be a number"));
    let p = SpheroidParam::new(a).expect("a must lie in (0, 1)");
    println!("{:>6} {:>12} {:>12} {:>12}", "n", "A", "V", "W");
    for n in [32, 64, 128, 256, 512, 1024, 2048] {
        let e = discretization_errors(p, n).unwrap();
        println!("{n:>6} {:>12.3e} {:>12.3e} {:>12.3e}", e.area, e.volume, e.willmore);
    }
}
