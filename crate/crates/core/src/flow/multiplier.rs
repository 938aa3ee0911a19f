use std::f64::consts::PI;

use super::FlowError;
use crate::geometry::GeometricState;

/// `D = ∫ |3H/A - 2/V|² dμ`.
pub fn denominator(state: &GeometricState) -> f64 {
    let b = state.ratio_direction();
    state.inner(&b, &b)
}

/// Abort threshold for `D`.
///
/// In the regime `W < 4π/σ` the floor is `1e-6` times the guaranteed lower
/// bound `36 (sqrt(4π/σ) - sqrt(W))² / A²`; it never drops below `1e-12 / A²`.
pub fn denominator_floor(state: &GeometricState, sigma: f64) -> f64 {
    let a2 = state.area * state.area;
    let mut floor = 1e-12 / a2;
    let threshold = 4.0 * PI / sigma;
    if state.willmore < threshold {
        let gap = threshold.sqrt() - state.willmore.sqrt();
        floor = floor.max(1e-6 * 36.0 * gap * gap / a2);
    }
    floor
}

fn check_denominator(state: &GeometricState, sigma: f64) -> Result<f64, FlowError> {
    if state.volume == 0.0 || !state.volume.is_finite() {
        return Err(FlowError::ZeroVolume);
    }
    let d = denominator(state);
    let floor = denominator_floor(state, sigma);
    if !(d > floor) {
        return Err(FlowError::DegenerateDenominator { value: d, floor });
    }
    Ok(d)
}

/// Multiplier in the integrated-by-parts form valid on `I = σ`:
///
/// `λ/A = [-3∫|∇H|² + 3∫|A⁰|²H² - c ∫|A⁰|²H] / ∫|3H - c|²`,
/// `c = sign(V) 12 sqrt(π/σ) / sqrt(A)`.
pub fn lagrange_multiplier(state: &GeometricState, sigma: f64) -> Result<f64, FlowError> {
    check_denominator(state, sigma)?;
    let a = state.area;
    let c = state.volume.signum() * 12.0 * (PI / sigma).sqrt() / a.sqrt();
    let n = state.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let (h, a0, w) = (state.h[i], state.a0_sq[i], state.mu_weights[i]);
        num += (-3.0 * state.grad_h_sq[i] + 3.0 * a0 * h * h - c * a0 * h) * w;
        let e = 3.0 * h - c;
        den += e * e * w;
    }
    Ok(a * num / den)
}

/// Multiplier straight from its defining quotient
/// `∫(ΔH + |A⁰|²H)(3H/A - 2/V) / ∫|3H/A - 2/V|²`.
pub fn lagrange_multiplier_direct(state: &GeometricState, sigma: f64) -> Result<f64, FlowError> {
    let d = check_denominator(state, sigma)?;
    let g = state.willmore_gradient();
    let b = state.ratio_direction();
    Ok(state.inner(&g, &b) / d)
}

/// Normal velocity and its two contributions.
#[derive(Debug, Clone)]
pub struct VelocitySplit {
    pub total: Vec<f64>,
    /// `-(ΔH + |A⁰|²H)`.
    pub willmore: Vec<f64>,
    /// `λ (3H/A - 2/V)`.
    pub constraint: Vec<f64>,
}

pub fn normal_velocity(state: &GeometricState, lambda: f64) -> VelocitySplit {
    let willmore: Vec<f64> = state.willmore_gradient().into_iter().map(|g| -g).collect();
    let constraint: Vec<f64> = state.ratio_direction().into_iter().map(|b| lambda * b).collect();
    let total = willmore.iter().zip(&constraint).map(|(w, c)| w + c).collect();
    VelocitySplit { total, willmore, constraint }
}

/// `‖ΔH + |A⁰|²H - λ₁H - λ₂‖` with `λ₁ = 3λ/A`, `λ₂ = -2λ/V`.
pub fn helfrich_residual(state: &GeometricState, lambda: f64) -> f64 {
    let l1 = 3.0 * lambda / state.area;
    let l2 = -2.0 * lambda / state.volume;
    let r: Vec<f64> =
        (0..state.len()).map(|i| state.lap_h[i] + state.a0_sq[i] * state.h[i] - l1 * state.h[i] - l2).collect();
    state.l2_norm(&r)
}

/// Residual made scale invariant by the factor `A / 4π`, the square of the
/// radius of the sphere with the same area.
pub fn normalized_residual(state: &GeometricState, lambda: f64) -> f64 {
    helfrich_residual(state, lambda) * state.area / (4.0 * PI)
}

/// Least-squares Helfrich multipliers for a given surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelfrichFit {
    pub lambda1: f64,
    pub lambda2: f64,
    /// `‖ΔH + |A⁰|²H - λ₁H - λ₂‖ · A / 4π`.
    pub residual: f64,
}

impl HelfrichFit {
    /// `(2 λ₁ A + 3 λ₂ V) / (2 |λ₁| A + 3 |λ₂| |V|)`; zero for exact
    /// Helfrich surfaces.
    pub fn scaling_defect(&self, area: f64, volume: f64) -> f64 {
        let num = 2.0 * self.lambda1 * area + 3.0 * self.lambda2 * volume;
        num / (2.0 * self.lambda1.abs() * area + 3.0 * self.lambda2.abs() * volume.abs())
    }
}

/// Fits `ΔH + |A⁰|²H ≈ λ₁H + λ₂` in `L²(dμ)`.
pub fn fit_helfrich(state: &GeometricState) -> HelfrichFit {
    let g = state.willmore_gradient();
    let one = vec![1.0; state.len()];
    let (hh, h1, oo) = (state.inner(&state.h, &state.h), state.inner(&state.h, &one), state.area);
    let (gh, g1) = (state.inner(&g, &state.h), state.inner(&g, &one));
    let det = hh * oo - h1 * h1;
    let lambda1 = (gh * oo - g1 * h1) / det;
    let lambda2 = (hh * g1 - h1 * gh) / det;
    let r: Vec<f64> = (0..state.len()).map(|i| g[i] - lambda1 * state.h[i] - lambda2).collect();
    HelfrichFit { lambda1, lambda2, residual: state.l2_norm(&r) * state.area / (4.0 * PI) }
}
