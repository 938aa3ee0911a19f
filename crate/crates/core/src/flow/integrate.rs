use std::f64::consts::PI;

use super::multiplier::lagrange_multiplier_direct;
use super::{FlowConfig, FlowError};
use crate::geometry::stencil::{ext_param, ext_value, fornberg_weights, Parity, Stencils};
use crate::geometry::{
    compute_with_stencils, measure, ratio_differential, staggered_params, GeometricState, ProfileCurve,
};

/// Largest accepted `|I - σ|` after projection.
pub const PROJECTION_TOL: f64 = 1e-12;

/// Real-axis stability limit of the classical four-stage scheme.
const RK4_REAL_LIMIT: f64 = 2.785;

/// Explicit step size `c_stab · 2.785 / ‖Δ‖²`, where `‖Δ‖` is a Gershgorin
/// bound for the discrete Laplacian. On the staggered grid `‖Δ‖ ~ h⁻²`, so
/// this is the usual `h⁴` restriction scaled with the local geometry.
pub fn stable_dt(state: &GeometricState, dt_safety: f64) -> f64 {
    let g = state.laplacian().spectral_bound();
    dt_safety * RK4_REAL_LIMIT / (g * g)
}

fn velocity(curve: &ProfileCurve, st: &Stencils, sigma: f64) -> Result<(Vec<f64>, Vec<f64>), FlowError> {
    let state = compute_with_stencils(curve, st)?;
    let lambda = lagrange_multiplier_direct(&state, sigma)?;
    let g = state.willmore_gradient();
    let b = state.ratio_direction();
    let mut vr = Vec::with_capacity(curve.len());
    let mut vz = Vec::with_capacity(curve.len());
    for i in 0..curve.len() {
        let xi = -g[i] + lambda * b[i];
        vr.push(xi * state.normal[i][0]);
        vz.push(xi * state.normal[i][1]);
    }
    Ok((vr, vz))
}

fn shifted(curve: &ProfileCurve, vr: &[f64], vz: &[f64], h: f64) -> Result<ProfileCurve, FlowError> {
    let r = curve.radial().iter().zip(vr).map(|(x, v)| x + h * v).collect();
    let z = curve.height().iter().zip(vz).map(|(x, v)| x + h * v).collect();
    Ok(ProfileCurve::new(curve.params().to_vec(), r, z)?)
}

pub(crate) fn rk4_step(curve: &ProfileCurve, st: &Stencils, sigma: f64, dt: f64) -> Result<ProfileCurve, FlowError> {
    let k1 = velocity(curve, st, sigma)?;
    let k2 = velocity(&shifted(curve, &k1.0, &k1.1, 0.5 * dt)?, st, sigma)?;
    let k3 = velocity(&shifted(curve, &k2.0, &k2.1, 0.5 * dt)?, st, sigma)?;
    let k4 = velocity(&shifted(curve, &k3.0, &k3.1, dt)?, st, sigma)?;
    let n = curve.len();
    let comb = |a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
        (0..n).map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0).collect::<Vec<_>>()
    };
    let vr = comb(&k1.0, &k2.0, &k3.0, &k4.0);
    let vz = comb(&k1.1, &k2.1, &k3.1, &k4.1);
    shifted(curve, &vr, &vz, dt)
}

/// Solves `(I + dt L²) x = rhs` for tridiagonal `L` given by its bands.
/// The matrix is symmetric positive definite in the mass inner product, so
/// elimination without pivoting is stable.
fn solve_biharmonic(bands: &(Vec<f64>, Vec<f64>, Vec<f64>), dt: f64, rhs: &[f64]) -> Vec<f64> {
    let (l, d, u) = bands;
    let n = rhs.len();
    // Row i holds columns i-2..=i+2.
    let mut m = vec![[0.0f64; 5]; n];
    for i in 0..n {
        let li = l[i];
        let ui = u[i];
        let dm1 = if i > 0 { d[i - 1] } else { 0.0 };
        let lm1 = if i > 0 { l[i - 1] } else { 0.0 };
        let um1 = if i > 0 { u[i - 1] } else { 0.0 };
        let dp1 = if i + 1 < n { d[i + 1] } else { 0.0 };
        let lp1 = if i + 1 < n { l[i + 1] } else { 0.0 };
        let up1 = if i + 1 < n { u[i + 1] } else { 0.0 };
        m[i][0] = dt * li * lm1;
        m[i][1] = dt * (li * dm1 + d[i] * li);
        m[i][2] = 1.0 + dt * (li * um1 + d[i] * d[i] + ui * lp1);
        m[i][3] = dt * (d[i] * ui + ui * dp1);
        m[i][4] = dt * ui * up1;
    }
    let mut x = rhs.to_vec();
    for k in 0..n {
        let piv = m[k][2];
        for off in 1..=2 {
            let i = k + off;
            if i >= n {
                break;
            }
            // Entry (i, k) sits at column slot 2 - off of row i.
            let f = m[i][2 - off] / piv;
            if f == 0.0 {
                continue;
            }
            for c in 0..=2 {
                // Column k + c of row k is slot 2 + c; of row i it is slot 2 + c - off.
                let slot = 2 + c - off;
                m[i][slot] -= f * m[k][2 + c];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for c in 1..=2 {
            if k + c < n {
                s -= m[k][2 + c] * x[k + c];
            }
        }
        x[k] = s / m[k][2];
    }
    x
}

/// Factor on `dt Δ²` in the implicit solve. The three-point `Δ` underestimates
/// the stiffness of the operator in `ΔH` at the shortest wavelengths; the
/// step is stable when the factor exceeds half that ratio.
const PRECONDITIONER_SCALE: f64 = 4.0;

pub(crate) fn implicit_step(
    curve: &ProfileCurve,
    st: &Stencils,
    state: &GeometricState,
    sigma: f64,
    dt: f64,
) -> Result<ProfileCurve, FlowError> {
    // Same guards as the multiplier itself.
    lagrange_multiplier_direct(state, sigma)?;
    let g = state.willmore_gradient();
    let b = state.ratio_direction();
    let bands = state.laplacian().bands();
    let p = solve_biharmonic(&bands, PRECONDITIONER_SCALE * dt, &g);
    let q = solve_biharmonic(&bands, PRECONDITIONER_SCALE * dt, &b);
    // Orthogonal to the exact differential of the discrete ratio, so that
    // projection vanishes at discrete stationary points.
    let beta = ratio_differential(curve, st, state);
    let dot = |u: &[f64]| -> f64 { u.iter().zip(&beta).map(|(x, y)| x * y).sum() };
    let lambda = dot(&p) / dot(&q);
    let speed: Vec<f64> = p.iter().zip(&q).map(|(p, q)| dt * (-p + lambda * q)).collect();
    Ok(curve.displaced(&speed, &state.normal)?)
}

/// One explicit four-stage step of length `dt`, with the multiplier
/// recomputed from each stage's geometry, followed by projection onto
/// `I = σ` when enabled.
pub fn step(curve: &ProfileCurve, config: &FlowConfig, dt: f64) -> Result<ProfileCurve, FlowError> {
    config.validate()?;
    let st = Stencils::new(curve.params());
    let next = rk4_step(curve, &st, config.sigma, dt)?;
    if config.projection {
        project_with(&next, &st, config.sigma)
    } else {
        Ok(next)
    }
}

/// One linearly implicit step: the normal speed is
/// `(I + dt Δ²)⁻¹ (-(ΔH + |A⁰|²H) + λ (3H/A - 2/V))` with `λ` chosen so
/// that the step is orthogonal to `∇I`.
pub fn step_implicit(curve: &ProfileCurve, config: &FlowConfig, dt: f64) -> Result<ProfileCurve, FlowError> {
    config.validate()?;
    let st = Stencils::new(curve.params());
    let state = compute_with_stencils(curve, &st)?;
    let next = implicit_step(curve, &st, &state, config.sigma, dt)?;
    if config.projection {
        project_with(&next, &st, config.sigma)
    } else {
        Ok(next)
    }
}

/// Moves the curve along `c (3H/A - 2/V) ν` with the scalar `c` solved so
/// that `I = σ`.
pub fn project_isoperimetric(curve: &ProfileCurve, sigma: f64) -> Result<ProfileCurve, FlowError> {
    project_with(curve, &Stencils::new(curve.params()), sigma)
}

pub(crate) fn project_with(curve: &ProfileCurve, st: &Stencils, sigma: f64) -> Result<ProfileCurve, FlowError> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(FlowError::InvalidSigma(sigma));
    }
    let state = compute_with_stencils(curve, st)?;
    let g0 = state.ratio - sigma;
    if g0.abs() <= 4.0 * f64::EPSILON * sigma {
        return Ok(curve.clone());
    }
    let fail = |ratio: f64| FlowError::ProjectionFailed { sigma, ratio };
    if g0.abs() > 1e-2 {
        return Err(fail(state.ratio));
    }
    let b = state.ratio_direction();
    let slope = state.ratio * state.inner(&b, &b);
    if !(slope > 0.0) {
        return Err(fail(state.ratio));
    }
    let moved = |c: f64| -> Result<(ProfileCurve, f64), FlowError> {
        let speed: Vec<f64> = b.iter().map(|x| c * x).collect();
        let next = curve.displaced(&speed, &state.normal)?;
        let (_, _, ratio) = measure(&next, st)?;
        Ok((next, ratio))
    };
    let (mut c_prev, mut g_prev) = (0.0, g0);
    let mut c = -g0 / slope;
    let (mut best, mut best_ratio) = moved(c)?;
    let mut g = best_ratio - sigma;
    for _ in 0..30 {
        if g.abs() <= 4.0 * f64::EPSILON * sigma || g == g_prev {
            break;
        }
        let c_next = c - g * (c - c_prev) / (g - g_prev);
        let (cand, ratio) = moved(c_next)?;
        let g_next = ratio - sigma;
        (c_prev, g_prev) = (c, g);
        c = c_next;
        if g_next.abs() < g.abs() {
            best = cand;
            best_ratio = ratio;
        }
        if g_next.abs() >= g_prev.abs() {
            break;
        }
        g = g_next;
    }
    if (best_ratio - sigma).abs() > PROJECTION_TOL {
        return Err(fail(best_ratio));
    }
    Ok(best)
}

const GAUSS3: [(f64, f64); 3] =
    [(-0.774_596_669_241_483_4, 5.0 / 9.0), (0.0, 8.0 / 9.0), (0.774_596_669_241_483_4, 5.0 / 9.0)];

/// `∫_a^b s` for the cubic interpolant of the speed through extended nodes
/// `cell-1..=cell+2`.
fn cell_integral(params: &[f64], speed: &[f64], cell: isize, a: f64, b: f64) -> f64 {
    let xs: Vec<f64> = (cell - 1..=cell + 2).map(|j| ext_param(params, j)).collect();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GAUSS3
        .iter()
        .map(|(x, w)| {
            let wts = fornberg_weights(mid + half * x, &xs, 0);
            let v: f64 = (0..4).map(|k| wts[0][k] * ext_value(speed, cell - 1 + k as isize, Parity::Even)).sum();
            w * v
        })
        .sum::<f64>()
        * half
}

fn interpolate(params: &[f64], values: &[f64], parity: Parity, cell: isize, t: f64) -> f64 {
    let xs: Vec<f64> = (cell - 2..=cell + 3).map(|j| ext_param(params, j)).collect();
    let w = fornberg_weights(t, &xs, 0);
    (0..6).map(|k| w[0][k] * ext_value(values, cell - 2 + k as isize, parity)).sum()
}

/// Resamples the curve at equal arclength on the staggered grid. The
/// surface is unchanged up to interpolation error.
pub fn redistribute(curve: &ProfileCurve) -> Result<ProfileCurve, FlowError> {
    let params = curve.params();
    let n = params.len();
    let st = Stencils::new(params);
    let (r, z) = (curve.radial(), curve.height());
    let speed: Vec<f64> =
        (0..n).map(|i| st.derivative(r, Parity::Odd, i).hypot(st.derivative(z, Parity::Even, i))).collect();
    let closure = curve.closure();
    // Cell c spans [t_c, t_{c+1}]; cell -1 starts at the south pole and
    // cell n-1 ends at the north pole.
    let lo = |c: isize| if c < 0 { closure.south } else { params[c as usize] };
    let hi = |c: isize| if c + 1 >= n as isize { closure.north } else { params[(c + 1) as usize] };
    let mut start = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    for c in -1..n as isize {
        start.push(acc);
        acc += cell_integral(params, &speed, c, lo(c), hi(c));
    }
    let total = acc;
    let new_params = staggered_params(n);
    let mut radial = Vec::with_capacity(n);
    let mut height = Vec::with_capacity(n);
    let mut cell: isize = -1;
    for k in 0..n {
        let target = total * (k as f64 + 0.5) / n as f64;
        while cell + 1 < n as isize && start[(cell + 2) as usize] <= target {
            cell += 1;
        }
        let (a, b) = (lo(cell), hi(cell));
        let base = start[(cell + 1) as usize];
        let (mut left, mut right) = (a, b);
        let mut t = a + (b - a) * ((target - base) / (start.get((cell + 2) as usize).copied().unwrap_or(total) - base));
        for _ in 0..60 {
            let f = base + cell_integral(params, &speed, cell, a, t) - target;
            if f > 0.0 {
                right = t;
            } else {
                left = t;
            }
            let v = interpolate(params, &speed, Parity::Even, cell, t);
            let mut next = t - f / v;
            if !(next > left && next < right) {
                next = 0.5 * (left + right);
            }
            if (next - t).abs() <= 1e-15 * PI {
                t = next;
                break;
            }
            t = next;
        }
        let anchor = cell.clamp(0, n as isize - 1);
        radial.push(interpolate(params, r, Parity::Odd, anchor, t));
        height.push(interpolate(params, z, Parity::Even, anchor, t));
    }
    Ok(ProfileCurve::new(new_params, radial, height)?)
}
