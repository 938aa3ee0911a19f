use std::f64::consts::PI;

use super::laplace::{midpoint_conductance, LaplaceBeltrami};
use super::stencil::{Parity, Stencils};
use super::{GeometryError, ProfileCurve};

/// Pointwise and global geometry of an axisymmetric surface.
///
/// Nodal arrays are indexed like the profile nodes. Integrals are
/// `∫ u dμ ≈ Σ u_i mu_weights[i]`; the weights include the `2 pi` from the
/// rotation.
#[derive(Debug, Clone)]
pub struct GeometricState {
    pub mu_weights: Vec<f64>,
    /// Unit normal `(ν_r, ν_z)`; points into the enclosed region for the
    /// standard orientation.
    pub normal: Vec<[f64; 2]>,
    /// Meridian and parallel principal curvatures.
    pub principal: Vec<[f64; 2]>,
    pub h: Vec<f64>,
    pub a0_sq: Vec<f64>,
    pub lap_h: Vec<f64>,
    pub grad_h_sq: Vec<f64>,
    /// `<f, ν>` at each node.
    pub support: Vec<f64>,
    pub area: f64,
    pub volume: f64,
    pub ratio: f64,
    pub willmore: f64,
    pub umbilic: f64,
    laplacian: LaplaceBeltrami,
}

impl GeometricState {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().zip(&self.mu_weights).map(|(u, w)| u * w).sum()
    }

    /// `∫ u v dμ`.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter().zip(v).zip(&self.mu_weights).map(|((a, b), w)| a * b * w).sum()
    }

    pub fn l2_norm(&self, u: &[f64]) -> f64 {
        self.inner(u, u).sqrt()
    }

    /// `|A|²` straight from the principal curvatures.
    pub fn second_fundamental_sq(&self) -> Vec<f64> {
        self.principal.iter().map(|[k1, k2]| k1 * k1 + k2 * k2).collect()
    }

    pub fn laplacian(&self) -> &LaplaceBeltrami {
        &self.laplacian
    }

    /// `ΔH + |A⁰|² H`, the normal component of the `W₀` gradient.
    pub fn willmore_gradient(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.lap_h[i] + self.a0_sq[i] * self.h[i]).collect()
    }

    /// `3H/A - 2/V`, the normal component of `∇I / I`.
    pub fn ratio_direction(&self) -> Vec<f64> {
        let (a, v) = (self.area, self.volume);
        self.h.iter().map(|h| 3.0 * h / a - 2.0 / v).collect()
    }
}

pub fn compute_geometry(curve: &ProfileCurve) -> Result<GeometricState, GeometryError> {
    let st = Stencils::new(curve.params());
    compute_with_stencils(curve, &st)
}

/// Arc-length speed and unit normal at node `i`.
fn frame(st: &Stencils, r: &[f64], z: &[f64], i: usize) -> Result<(f64, f64, [f64; 2]), GeometryError> {
    let dr = st.derivative(r, Parity::Odd, i);
    let dz = st.derivative(z, Parity::Even, i);
    let s = dr.hypot(dz);
    if !(s > 1e-300) || !s.is_finite() {
        return Err(GeometryError::DegenerateNode { index: i });
    }
    Ok((dr, dz, [-dz / s, dr / s]))
}

/// `(A, V, I)` alone, identical to the values in the full state.
pub(crate) fn measure(curve: &ProfileCurve, st: &Stencils) -> Result<(f64, f64, f64), GeometryError> {
    let (r, z) = (curve.radial(), curve.height());
    let mut area = 0.0;
    let mut dot = 0.0;
    for i in 0..curve.len() {
        let (dr, dz, nu) = frame(st, r, z, i)?;
        let mu = 2.0 * PI * (r[i] * dr.hypot(dz) * st.widths[i]);
        area += mu;
        dot += (r[i] * nu[0] + z[i] * nu[1]) * mu;
    }
    let volume = -dot / 3.0;
    Ok((area, volume, 36.0 * PI * volume * volume / (area * area * area)))
}

pub(crate) fn compute_with_stencils(curve: &ProfileCurve, st: &Stencils) -> Result<GeometricState, GeometryError> {
    let (r, z) = (curve.radial(), curve.height());
    let n = curve.len();
    let mut mu_weights = Vec::with_capacity(n);
    let mut mass = Vec::with_capacity(n);
    let mut normal = Vec::with_capacity(n);
    let mut principal = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    let mut a0_sq = Vec::with_capacity(n);
    let mut support = Vec::with_capacity(n);
    let mut speed = Vec::with_capacity(n);
    for i in 0..n {
        let (dr, dz, nu) = frame(st, r, z, i)?;
        let ddr = st.second_derivative(r, Parity::Odd, i);
        let ddz = st.second_derivative(z, Parity::Even, i);
        let s = dr.hypot(dz);
        let k1 = (dr * ddz - dz * ddr) / (s * s * s);
        let k2 = dz / (r[i] * s);
        let w = r[i] * s * st.widths[i];
        speed.push(s);
        mass.push(w);
        mu_weights.push(2.0 * PI * w);
        normal.push(nu);
        principal.push([k1, k2]);
        h.push(k1 + k2);
        a0_sq.push(0.5 * (k1 - k2) * (k1 - k2));
        support.push(r[i] * nu[0] + z[i] * nu[1]);
    }
    let laplacian = LaplaceBeltrami::from_parts(st, r, &speed, mass, midpoint_conductance(st, r, z)?);
    let lap_h = laplacian.apply(&h)?;
    let grad_h_sq = laplacian.gradient_sq(&h)?;

    let dot = |u: &[f64]| -> f64 { u.iter().zip(&mu_weights).map(|(a, w)| a * w).sum() };
    let area: f64 = mu_weights.iter().sum();
    let volume = -dot(&support) / 3.0;
    let willmore = 0.25 * h.iter().zip(&mu_weights).map(|(x, w)| x * x * w).sum::<f64>();
    let umbilic = dot(&a0_sq);
    let ratio = 36.0 * PI * volume * volume / (area * area * area);
    Ok(GeometricState {
        mu_weights,
        normal,
        principal,
        h,
        a0_sq,
        lap_h,
        grad_h_sq,
        support,
        area,
        volume,
        ratio,
        willmore,
        umbilic,
        laplacian,
    })
}

/// Exact differential of the discrete `I` under normal node displacements:
/// `dI[φ] = Σ_j φ_j out[j]`.
pub(crate) fn ratio_differential(curve: &ProfileCurve, st: &Stencils, state: &GeometricState) -> Vec<f64> {
    use super::stencil::ext_source;
    let (r, z) = (curve.radial(), curve.height());
    let n = curve.len();
    let mut da_r = vec![0.0; n];
    let mut da_z = vec![0.0; n];
    let mut dv_r = vec![0.0; n];
    let mut dv_z = vec![0.0; n];
    for i in 0..n {
        let w = st.widths[i];
        let dr = st.derivative(r, Parity::Odd, i);
        let dz = st.derivative(z, Parity::Even, i);
        let s = dr.hypot(dz);
        da_r[i] += w * s;
        dv_r[i] += w * (2.0 * r[i] * dz - z[i] * dr) / 3.0;
        dv_z[i] += -w * r[i] * dr / 3.0;
        // Coefficients of r'_i and z'_i in A and V.
        let (ar, az) = (w * r[i] * dr / s, w * r[i] * dz / s);
        let (vr, vz) = (-w * r[i] * z[i] / 3.0, w * r[i] * r[i] / 3.0);
        for (k, c) in st.d1[i].iter().enumerate() {
            let j = i as isize - 2 + k as isize;
            let (m, sr) = ext_source(n, j, Parity::Odd);
            let (mz, sz) = ext_source(n, j, Parity::Even);
            da_r[m] += ar * c * sr;
            dv_r[m] += vr * c * sr;
            da_z[mz] += az * c * sz;
            dv_z[mz] += vz * c * sz;
        }
    }
    let (a, v, ratio) = (state.area, state.volume, state.ratio);
    (0..n)
        .map(|j| {
            let [nr, nz] = state.normal[j];
            let da = 2.0 * PI * (da_r[j] * nr + da_z[j] * nz);
            let dv = 2.0 * PI * (dv_r[j] * nr + dv_z[j] * nz);
            ratio * (2.0 * dv / v - 3.0 * da / a)
        })
        .collect()
}
