use std::f64::consts::PI;

use super::{GeometricState, ProfileCurve};

/// Number of axis points added to the node centers.
pub const AXIS_CANDIDATES: usize = 64;

/// Fraction of the ring `{|x| = r, height z}` inside the ball of radius
/// `rho` around `(cr, 0, cz)`.
fn ring_fraction(r: f64, z: f64, cr: f64, cz: f64, rho: f64) -> f64 {
    let dz = z - cz;
    let base = r * r + cr * cr + dz * dz;
    let rho2 = rho * rho;
    let cross = 2.0 * r * cr;
    if base + cross <= rho2 {
        return 1.0;
    }
    if base - cross > rho2 {
        return 0.0;
    }
    // |x - c|² = base - cross cos(theta) <= rho²
    let c = ((base - rho2) / cross).clamp(-1.0, 1.0);
    c.acos() / PI
}

/// Largest `∫_{B_rho(x)} |A|² dμ` over the node positions and
/// [`AXIS_CANDIDATES`] axis points spanning the height range.
pub fn curvature_concentration(curve: &ProfileCurve, state: &GeometricState, rho: f64) -> f64 {
    assert!(rho > 0.0, "concentration radius must be positive");
    let a_sq: Vec<f64> =
        (0..state.len()).map(|i| (state.a0_sq[i] + 0.5 * state.h[i] * state.h[i]) * state.mu_weights[i]).collect();
    let (r, z) = (curve.radial(), curve.height());
    let ball =
        |cr: f64, cz: f64| -> f64 { (0..r.len()).map(|j| a_sq[j] * ring_fraction(r[j], z[j], cr, cz, rho)).sum() };
    let zmin = z.iter().cloned().fold(f64::INFINITY, f64::min);
    let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut best = 0.0f64;
    for k in 0..AXIS_CANDIDATES {
        let cz = zmin + (zmax - zmin) * k as f64 / (AXIS_CANDIDATES - 1) as f64;
        best = best.max(ball(0.0, cz));
    }
    for i in 0..r.len() {
        best = best.max(ball(r[i], z[i]));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_fraction_limits() {
        assert_eq!(ring_fraction(1.0, 0.0, 0.0, 0.0, 1.5), 1.0);
        assert_eq!(ring_fraction(1.0, 0.0, 0.0, 0.0, 0.5), 0.0);
        // Ball around a point of the ring with radius sqrt(2): quarter turn each way.
        let f = ring_fraction(1.0, 0.0, 1.0, 0.0, 2f64.sqrt());
        assert!((f - 0.5).abs() < 1e-12);
    }
}
