//! Runs the flow to a stationary point and checks the Helfrich equation
//! ΔH + |A⁰|²H - λ₁H - λ₂ = 0 with its scaling identity 2λ₁A + 3λ₂V = 0.

use std::f64::consts::{FRAC_PI_2, PI};

use isoflow::flow::{fit_helfrich, run, FlowConfig};
use isoflow::geometry::{compute_geometry, ProfileCurve};

fn main() {
    let c = ProfileCurve::from_fn(128, |t| (0.6 * t.cos() * (1.0 + 0.01 * (4.0 * (t + FRAC_PI_2)).cos()), t.sin()))
        .unwrap();
    let s = compute_geometry(&c).unwrap();
    let scale = (s.area / (4.0 * PI)).powi(2);
    let mut cfg = FlowConfig::new(s.ratio);
    cfg.dt = Some(1e-4 * scale);
    cfg.t_end = 10.0 * scale;
    cfg.stationarity_tol = 1e-5;
    cfg.record_every = 50;
    let trace = run(&c, &cfg).unwrap();
    for r in &trace.records {
        println!("t = {:.4e}  W0 = {:.10}  residual = {:.3e}", r.t, r.umbilic, r.residual);
    }

    let end = compute_geometry(trace.final_curve()).unwrap();
    let last = trace.last();
    let fit = fit_helfrich(&end);
    println!("{} after {} steps", trace.termination, trace.steps);
    println!(
        "from the multiplier: lambda1 = {:.8}, lambda2 = {:.8}",
        3.0 * last.lambda / last.area,
        -2.0 * last.lambda / last.volume
    );
    println!("least squares:       lambda1 = {:.8}, lambda2 = {:.8}", fit.lambda1, fit.lambda2);
    println!("2 lambda1 A + 3 lambda2 V relative defect {:.2e}", fit.scaling_defect(end.area, end.volume));
}
