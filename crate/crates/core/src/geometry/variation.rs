use std::f64::consts::{FRAC_PI_2, PI};

use super::stencil::Stencils;
use super::{compute_with_stencils, GeometricState, GeometryError, ProfileCurve};

/// Relative finite-difference step; multiplied by the area radius.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Area,
    Volume,
    Umbilic,
    Ratio,
}

impl Functional {
    pub fn evaluate(self, state: &GeometricState) -> f64 {
        match self {
            Functional::Area => state.area,
            Functional::Volume => state.volume,
            Functional::Umbilic => state.umbilic,
            Functional::Ratio => state.ratio,
        }
    }

    /// Normal component of the `L²(dμ)` gradient.
    pub fn gradient(self, state: &GeometricState) -> Vec<f64> {
        match self {
            Functional::Area => state.h.iter().map(|h| -h).collect(),
            Functional::Volume => vec![-1.0; state.len()],
            Functional::Umbilic => state.willmore_gradient(),
            Functional::Ratio => {
                let sigma = state.ratio;
                state.ratio_direction().into_iter().map(|b| sigma * b).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationPair {
    pub analytic: f64,
    pub finite_difference: f64,
}

impl VariationPair {
    pub fn relative_gap(&self) -> f64 {
        (self.analytic - self.finite_difference).abs() / self.analytic.abs().max(self.finite_difference.abs())
    }
}

/// First variation of `functional` along the normal field `direction * ν`,
/// once from the gradient formula and once by central differences.
pub fn variation_check(
    curve: &ProfileCurve,
    functional: Functional,
    direction: &[f64],
) -> Result<VariationPair, GeometryError> {
    if direction.len() != curve.len() {
        return Err(GeometryError::LengthMismatch { expected: curve.len(), found: direction.len() });
    }
    let st = Stencils::new(curve.params());
    let state = compute_with_stencils(curve, &st)?;
    if functional == Functional::Ratio && state.ratio == 0.0 {
        return Err(GeometryError::ZeroRatio);
    }
    let analytic = state.inner(&functional.gradient(&state), direction);
    let eps = FD_STEP * (state.area / (4.0 * PI)).sqrt();
    let shifted = |sign: f64| -> Result<f64, GeometryError> {
        let speed: Vec<f64> = direction.iter().map(|p| sign * eps * p).collect();
        let c = curve.displaced(&speed, &state.normal)?;
        Ok(functional.evaluate(&compute_with_stencils(&c, &st)?))
    };
    let finite_difference = (shifted(1.0)? - shifted(-1.0)?) / (2.0 * eps);
    Ok(VariationPair { analytic, finite_difference })
}

/// `φ(t) = Σ_m c_m cos(m (t + pi/2))`, even across both poles and hence
/// smooth on the surface.
pub fn smooth_direction(curve: &ProfileCurve, coefficients: &[f64]) -> Vec<f64> {
    curve
        .params()
        .iter()
        .map(|t| coefficients.iter().enumerate().map(|(m, c)| c * (m as f64 * (t + FRAC_PI_2)).cos()).sum())
        .collect()
}
