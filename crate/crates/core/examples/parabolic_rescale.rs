//! f̃(t) = f(r⁴t) / r: transforms a trace and compares it with a run from
//! the shrunk initial surface.

use std::f64::consts::{FRAC_PI_2, PI};

use isoflow::flow::{rescale_check, FlowConfig};
use isoflow::geometry::{compute_geometry, ProfileCurve};

fn main() {
    let c = ProfileCurve::from_fn(128, |t| (0.6 * t.cos() * (1.0 + 0.01 * (4.0 * (t + FRAC_PI_2)).cos()), t.sin()))
        .unwrap();
    let s = compute_geometry(&c).unwrap();
    let mut cfg = FlowConfig::new(s.ratio);
    cfg.t_end = 2e-4 * (s.area / (4.0 * PI)).powi(2);
    cfg.snapshot_every = 25;
    for r in [0.5, 1.3, 2.0, 3.7] {
        let check = rescale_check(&c, &cfg, r).unwrap();
        println!(
            "r = {r}: cum_lambda {:.12e} -> {:.12e}, profile gap {:.1e}, lambda gap {:.1e}, {}",
            check.cum_lambda.0,
            check.cum_lambda.1,
            check.profile_gap,
            check.lambda_gap,
            if check.passes() { "ok" } else { "FAIL" }
        );
    }
}
