//! Curvature concentration: the largest ∫|A|² dμ over balls of radius ρ,
//! for spheroids getting thinner.

use isoflow::geometry::{compute_geometry, curvature_concentration};
use isoflow::spheroid::spheroid_profile;

fn main() {
    println!("{:>6} {:>10} {:>10} {:>10}", "a", "rho=0.1", "rho=0.5", "rho=2");
    for a in [0.9, 0.6, 0.3, 0.1] {
        let c = spheroid_profile(a, 256).unwrap();
        let s = compute_geometry(&c).unwrap();
        let k: Vec<f64> = [0.1, 0.5, 2.0].iter().map(|&rho| curvature_concentration(&c, &s, rho)).collect();
        println!("{a:>6} {:>10.4} {:>10.4} {:>10.4}", k[0], k[1], k[2]);
    }
}
