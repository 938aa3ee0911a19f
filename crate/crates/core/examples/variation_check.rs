//! First variations of A, V, W₀ and I: gradient formulas against central
//! differences, plus the scaling direction φ = ⟨f, ν⟩.

use isoflow::geometry::{compute_geometry, smooth_direction, variation_check, Functional};
use isoflow::spheroid::spheroid_profile;

fn main() {
    let c = spheroid_profile(0.6, 256).unwrap();
    let s = compute_geometry(&c).unwrap();
    let dir = smooth_direction(&c, &[0.3, -0.5, 0.7, 0.2, -0.4, 0.1]);
    println!("{:<8} {:>20} {:>20} {:>10}", "", "gradient", "difference", "gap");
    for f in [Functional::Area, Functional::Volume, Functional::Umbilic, Functional::Ratio] {
        let p = variation_check(&c, f, &dir).unwrap();
        println!(
            "{:<8} {:>20.12e} {:>20.12e} {:>10.2e}",
            format!("{f:?}"),
            p.analytic,
            p.finite_difference,
            p.relative_gap()
        );
    }
    println!();
    println!("along φ = <f, ν>: expect 2A = {:.12}, 3V = {:.12}, 0, 0", 2.0 * s.area, 3.0 * s.volume);
    for f in [Functional::Area, Functional::Volume, Functional::Umbilic, Functional::Ratio] {
        let p = variation_check(&c, f, &s.support).unwrap();
        println!("{:<8} {:>20.12e} {:>20.12e}", format!("{f:?}"), p.analytic, p.finite_difference);
    }
}
