//! F(a), the energy gap W - 4π/I and its identity with (π/6) F, and the
//! spheroid with a prescribed ratio.

use std::f64::consts::PI;

use isoflow::spheroid::{invert_isoperimetric, spheroid_table, spheroid_willmore, GapEvaluation, SpheroidParam};

fn main() {
    println!("{:>6} {:>14} {:>14} {:>10} {:>12}", "a", "F", "W - 4pi/I", "I", "identity");
    for row in spheroid_table(0.05, 0.95, 19).unwrap() {
        let g = GapEvaluation::new(SpheroidParam::new(row.a).unwrap());
        println!(
            "{:>6.3} {:>14.6e} {:>14.6e} {:>10.6} {:>12.1e}",
            row.a,
            row.gap_function,
            row.energy_gap,
            row.ratio,
            g.identity_error()
        );
    }
    for sigma in [0.3, 0.7, 0.95] {
        let a = invert_isoperimetric(sigma).unwrap();
        println!(
            "sigma = {sigma}: a = {:.10}, W = {:.8} < 4pi/sigma = {:.8}",
            a.value(),
            spheroid_willmore(a),
            4.0 * PI / sigma
        );
    }
}
