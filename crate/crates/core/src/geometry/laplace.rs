//! Laplace–Beltrami operator for axisymmetric fields,
//! `Δu = (1/(r s)) d/dt ((r/s) du/dt)` with `s = |c'(t)|`.
//!
//! Both discretizations are of the form `Δ = -M⁻¹ Bᵀ K B` with `M` the nodal
//! area weights, so they are exactly symmetric in `L²(dμ)`, kill constants
//! and integrate to zero. On the uniform staggered grid `B` is polynomial
//! differentiation in `x = -sin t` and the energy is summed with Fejér
//! weights on a grid twice as fine, which integrates the products of
//! derivatives exactly up to the smoothness of the metric. Otherwise `B` is the two-point
//! difference onto the midpoints. The two-point form is always kept since
//! its tridiagonal bands are what the implicit integrator inverts.

use std::f64::consts::PI;
use std::sync::Arc;

use super::stencil::{ChebyshevGrid, Parity, Stencils};
use super::{GeometryError, ProfileCurve};

#[derive(Debug, Clone)]
pub struct LaplaceBeltrami {
    /// `c (r/s)_{i+1/2} / (t_{i+1} - t_i)` for the `n - 1` interior midpoints,
    /// with `c` the pole correction from the stencils.
    conductance: Vec<f64>,
    /// `r_i s_i w_i`: nodal area weights without the `2 pi` factor.
    mass: Vec<f64>,
    spectral: Option<Spectral>,
}

#[derive(Debug, Clone)]
struct Spectral {
    grid: Arc<ChebyshevGrid>,
    /// `w_j r_j cos² t_j / s_j` on the fine grid.
    coef: Vec<f64>,
}

impl Spectral {
    /// `(du/dx, Iᵀ K I du/dx)` with `I` the interpolation to the fine grid.
    fn energy_parts(&self, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let du = self.grid.diff.apply(u);
        let mut fine = self.grid.interp.apply(&du);
        for (f, c) in fine.iter_mut().zip(&self.coef) {
            *f *= c;
        }
        let back = self.grid.interp.apply_transpose(&fine);
        (du, back)
    }
}

impl LaplaceBeltrami {
    pub(crate) fn from_parts(st: &Stencils, r: &[f64], speed: &[f64], mass: Vec<f64>, conductance: Vec<f64>) -> Self {
        debug_assert_eq!(conductance.len() + 1, mass.len());
        let spectral = st.chebyshev.as_ref().map(|grid| {
            let n = r.len();
            // r / cos t and s are even across the poles, hence smooth in x.
            let rho: Vec<f64> = (0..n).map(|i| r[i] / ((i as f64 + 0.5) * PI / n as f64).sin()).collect();
            let rho = grid.interp.apply(&rho);
            let s = grid.interp.apply(speed);
            let coef = (0..rho.len())
                .map(|j| {
                    let c = grid.fine_cos[j];
                    grid.fine_widths[j] * rho[j] * c * c * c / s[j]
                })
                .collect();
            Spectral { grid: Arc::clone(grid), coef }
        });
        LaplaceBeltrami { conductance, mass, spectral }
    }

    /// Whether the high-order form is in use.
    pub fn is_spectral(&self) -> bool {
        self.spectral.is_some()
    }

    pub fn new(curve: &ProfileCurve) -> Result<Self, GeometryError> {
        let st = Stencils::new(curve.params());
        let (r, z) = (curve.radial(), curve.height());
        let n = curve.len();
        let mut mass = Vec::with_capacity(n);
        let mut speed = Vec::with_capacity(n);
        for i in 0..n {
            let dr = st.derivative(r, Parity::Odd, i);
            let dz = st.derivative(z, Parity::Even, i);
            let s = dr.hypot(dz);
            if !(s > 0.0) {
                return Err(GeometryError::DegenerateNode { index: i });
            }
            mass.push(r[i] * s * st.widths[i]);
            speed.push(s);
        }
        let conductance = midpoint_conductance(&st, r, z)?;
        Ok(LaplaceBeltrami::from_parts(&st, r, &speed, mass, conductance))
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn conductance(&self) -> &[f64] {
        &self.conductance
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    fn flux(&self, u: &[f64], m: usize) -> f64 {
        self.conductance[m] * (u[m + 1] - u[m])
    }

    pub fn apply(&self, u: &[f64]) -> Result<Vec<f64>, GeometryError> {
        let n = self.len();
        if u.len() != n {
            return Err(GeometryError::LengthMismatch { expected: n, found: u.len() });
        }
        if let Some(sp) = &self.spectral {
            let (_, back) = sp.energy_parts(u);
            let div = sp.grid.diff.apply_transpose(&back);
            return Ok(div.iter().zip(&self.mass).map(|(d, m)| -d / m).collect());
        }
        Ok((0..n)
            .map(|i| {
                let right = if i + 1 < n { self.flux(u, i) } else { 0.0 };
                let left = if i > 0 { self.flux(u, i - 1) } else { 0.0 };
                (right - left) / self.mass[i]
            })
            .collect())
    }

    /// Nodal `|∇u|²` whose weighted sum is exactly `-∫ u Δu`. The two-point
    /// form splits each midpoint's energy evenly between its nodes.
    pub fn gradient_sq(&self, u: &[f64]) -> Result<Vec<f64>, GeometryError> {
        let n = self.len();
        if u.len() != n {
            return Err(GeometryError::LengthMismatch { expected: n, found: u.len() });
        }
        if let Some(sp) = &self.spectral {
            let (du, back) = sp.energy_parts(u);
            return Ok((0..n).map(|i| du[i] * back[i] / self.mass[i]).collect());
        }
        let mut out = vec![0.0; n];
        for m in 0..n - 1 {
            let du = u[m + 1] - u[m];
            let e = 0.5 * self.conductance[m] * du * du;
            out[m] += e;
            out[m + 1] += e;
        }
        for (o, w) in out.iter_mut().zip(&self.mass) {
            *o /= w;
        }
        Ok(out)
    }

    /// Tridiagonal `(lower, diag, upper)` of the two-point form.
    pub fn bands(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.len();
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            if i + 1 < n {
                upper[i] = self.conductance[i] / self.mass[i];
                diag[i] -= self.conductance[i] / self.mass[i];
            }
            if i > 0 {
                lower[i] = self.conductance[i - 1] / self.mass[i];
                diag[i] -= self.conductance[i - 1] / self.mass[i];
            }
        }
        (lower, diag, upper)
    }

    /// Upper estimate of the spectral radius: Gershgorin for the two-point
    /// form, power iteration with a 10% margin for the polynomial one.
    pub fn spectral_bound(&self) -> f64 {
        if self.spectral.is_none() {
            let (_, diag, _) = self.bands();
            return diag.iter().map(|d| 2.0 * d.abs()).fold(0.0, f64::max);
        }
        let n = self.len();
        let mut v: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } + 1e-3 * i as f64).collect();
        let norm = |v: &[f64]| -> f64 { v.iter().zip(&self.mass).map(|(x, m)| x * x * m).sum::<f64>().sqrt() };
        let mut estimate = 0.0;
        for _ in 0..100 {
            let nv = norm(&v);
            v.iter_mut().for_each(|x| *x /= nv);
            let w = self.apply(&v).expect("length matches");
            let next = norm(&w);
            v = w;
            if (next - estimate).abs() <= 1e-6 * next {
                estimate = next;
                break;
            }
            estimate = next;
        }
        1.1 * estimate
    }
}

pub(crate) fn midpoint_conductance(st: &Stencils, r: &[f64], z: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let n = r.len();
    let mut out = Vec::with_capacity(n - 1);
    for m in 0..n - 1 {
        let rm = st.midpoint_value(r, Parity::Odd, m);
        let drm = st.midpoint_derivative(r, Parity::Odd, m);
        let dzm = st.midpoint_derivative(z, Parity::Even, m);
        let sm = drm.hypot(dzm);
        if !(sm > 0.0) || !(rm > 0.0) {
            return Err(GeometryError::DegenerateNode { index: m });
        }
        out.push(st.flux_scale[m] * rm / sm / st.gaps[m]);
    }
    Ok(out)
}

/// Applies the discrete Laplace–Beltrami operator of `curve` to `field`.
pub fn laplace_beltrami(curve: &ProfileCurve, field: &[f64]) -> Result<Vec<f64>, GeometryError> {
    if field.len() != curve.len() {
        return Err(GeometryError::LengthMismatch { expected: curve.len(), found: field.len() });
    }
    LaplaceBeltrami::new(curve)?.apply(field)
}
