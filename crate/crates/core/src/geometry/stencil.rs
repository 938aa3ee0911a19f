//! Finite-difference weights on the mirrored profile grid.
//!
//! The profile lives on `(-pi/2, pi/2)`. Reflecting it across either pole
//! (`t -> pi - t` at the north pole, `t -> -pi - t` at the south pole) with
//! `r` odd and `z` even yields a smooth closed curve, so every stencil can be
//! centered even next to the axis.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

/// Parity of a nodal quantity under reflection across a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parameter of extended index `j` (may be -2, -1, n, n+1).
pub(crate) fn ext_param(params: &[f64], j: isize) -> f64 {
    let n = params.len() as isize;
    if j < 0 {
        -std::f64::consts::PI - params[(-1 - j) as usize]
    } else if j >= n {
        std::f64::consts::PI - params[(2 * n - 1 - j) as usize]
    } else {
        params[j as usize]
    }
}

/// Node behind extended index `j` and the sign picked up on the way.
pub(crate) fn ext_source(n: usize, j: isize, parity: Parity) -> (usize, f64) {
    let n = n as isize;
    let (k, mirrored) = if j < 0 {
        ((-1 - j) as usize, true)
    } else if j >= n {
        ((2 * n - 1 - j) as usize, true)
    } else {
        (j as usize, false)
    };
    match (mirrored, parity) {
        (true, Parity::Odd) => (k, -1.0),
        _ => (k, 1.0),
    }
}

/// Value of a nodal field at extended index `j`.
#[inline]
pub(crate) fn ext_value(values: &[f64], j: isize, parity: Parity) -> f64 {
    let n = values.len() as isize;
    let (k, mirrored) = if j < 0 {
        ((-1 - j) as usize, true)
    } else if j >= n {
        ((2 * n - 1 - j) as usize, true)
    } else {
        (j as usize, false)
    };
    match (mirrored, parity) {
        (true, Parity::Odd) => -values[k],
        _ => values[k],
    }
}

/// Fornberg's recursion: weights for derivatives `0..=max_order` at `z`
/// from samples at `xs`. Returned as `w[order][point]`.
pub fn fornberg_weights(z: f64, xs: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let np = xs.len();
    let mut c = vec![vec![0.0; np]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..np {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Precomputed stencils for one parameter grid.
#[derive(Debug, Clone)]
pub struct Stencils {
    /// First-derivative weights at node `i` over extended nodes `i-2..=i+2`.
    pub d1: Vec<[f64; 5]>,
    /// Second-derivative weights at node `i` over extended nodes `i-2..=i+2`.
    pub d2: Vec<[f64; 5]>,
    /// Interpolation weights at the midpoint `i+1/2` over `i-1..=i+2`.
    pub mid_value: Vec<[f64; 4]>,
    /// First-derivative weights at the midpoint `i+1/2` over `i-1..=i+2`.
    pub mid_d1: Vec<[f64; 4]>,
    /// Quadrature weights in parameter space for integrands of the form
    /// `G(t) cos t` with `G` even across both poles.
    pub widths: Vec<f64>,
    /// Flux correction at each interior midpoint so that the Laplacian stays
    /// consistent with `widths` next to the poles.
    pub flux_scale: Vec<f64>,
    /// Parameter gaps `t_{i+1} - t_i`, `n - 1` entries.
    pub gaps: Vec<f64>,
    /// Polynomial operators for the uniform staggered grid, whose nodes are
    /// Chebyshev points in `x = -sin t`.
    pub chebyshev: Option<Arc<ChebyshevGrid>>,
}

/// Differentiation on the nodes plus interpolation onto the staggered grid
/// with twice as many nodes, where energies are summed with Fejér weights.
#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    pub diff: ChebyshevDiff,
    pub interp: DenseMatrix,
    pub fine_widths: Vec<f64>,
    pub fine_cos: Vec<f64>,
}

impl ChebyshevGrid {
    pub fn new(n: usize) -> Self {
        let fine = 2 * n;
        let fine_params: Vec<f64> = (0..fine).map(|j| -FRAC_PI_2 + (j as f64 + 0.5) * PI / fine as f64).collect();
        ChebyshevGrid {
            diff: ChebyshevDiff::new(n),
            interp: chebyshev_interpolation(n, fine),
            fine_widths: fejer_widths(&fine_params),
            fine_cos: fine_params.iter().map(|t| t.cos()).collect(),
        }
    }
}

/// Dense differentiation matrix for polynomial interpolation in
/// `x = cos θ` at `θ_j = (j + 1/2) pi / n`.
#[derive(Debug, Clone)]
pub struct ChebyshevDiff(DenseMatrix);

impl ChebyshevDiff {
    pub fn new(n: usize) -> Self {
        let theta = chebyshev_angles(n);
        let weight = barycentric_weights(&theta);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            let mut diag = 0.0;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = weight[j] / weight[i] / cos_gap(theta[i], theta[j]);
                data[i * n + j] = d;
                diag -= d;
            }
            data[i * n + i] = diag;
        }
        ChebyshevDiff(DenseMatrix { rows: n, cols: n, data })
    }

    pub fn len(&self) -> usize {
        self.0.rows
    }

    pub fn is_empty(&self) -> bool {
        self.0.rows == 0
    }

    /// `du/dx` at the nodes.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        self.0.apply(u)
    }

    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        self.0.apply_transpose(y)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.cols).map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (row, yi) in self.data.chunks_exact(self.cols).zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }
}

fn chebyshev_angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| (j as f64 + 0.5) * PI / n as f64).collect()
}

fn barycentric_weights(theta: &[f64]) -> Vec<f64> {
    theta.iter().enumerate().map(|(j, t)| if j % 2 == 0 { t.sin() } else { -t.sin() }).collect()
}

/// `cos a - cos b` without cancellation.
fn cos_gap(a: f64, b: f64) -> f64 {
    -2.0 * (0.5 * (a + b)).sin() * (0.5 * (a - b)).sin()
}

/// Evaluation at the `fine` staggered Chebyshev points of the interpolant
/// through the `n` coarse ones. The two point sets never meet when `fine`
/// is `2n`.
fn chebyshev_interpolation(n: usize, fine: usize) -> DenseMatrix {
    let theta = chebyshev_angles(n);
    let w = barycentric_weights(&theta);
    let mut data = vec![0.0; fine * n];
    for (j, y) in chebyshev_angles(fine).into_iter().enumerate() {
        let row = &mut data[j * n..(j + 1) * n];
        let mut total = 0.0;
        for k in 0..n {
            row[k] = w[k] / cos_gap(y, theta[k]);
            total += row[k];
        }
        row.iter_mut().for_each(|v| *v /= total);
    }
    DenseMatrix { rows: fine, cols: n, data }
}

impl Stencils {
    pub fn new(params: &[f64]) -> Self {
        let n = params.len();
        let mut d1 = Vec::with_capacity(n);
        let mut d2 = Vec::with_capacity(n);
        for i in 0..n as isize {
            let xs: Vec<f64> = (i - 2..=i + 2).map(|j| ext_param(params, j)).collect();
            let w = fornberg_weights(params[i as usize], &xs, 2);
            d1.push([w[1][0], w[1][1], w[1][2], w[1][3], w[1][4]]);
            d2.push([w[2][0], w[2][1], w[2][2], w[2][3], w[2][4]]);
        }
        let mut mid_value = Vec::with_capacity(n.saturating_sub(1));
        let mut mid_d1 = Vec::with_capacity(n.saturating_sub(1));
        let mut gaps = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let m = 0.5 * (params[i] + params[i + 1]);
            let ii = i as isize;
            let xs: Vec<f64> = (ii - 1..=ii + 2).map(|j| ext_param(params, j)).collect();
            let w = fornberg_weights(m, &xs, 1);
            mid_value.push([w[0][0], w[0][1], w[0][2], w[0][3]]);
            mid_d1.push([w[1][0], w[1][1], w[1][2], w[1][3]]);
            gaps.push(params[i + 1] - params[i]);
        }
        let uniform = is_uniform_staggered(params);
        let widths = if uniform { fejer_widths(params) } else { midpoint_widths(params) };
        let flux_scale = flux_scale(params, &widths);
        let chebyshev = uniform.then(|| Arc::new(ChebyshevGrid::new(n)));
        Stencils { d1, d2, mid_value, mid_d1, widths, flux_scale, gaps, chebyshev }
    }

    pub fn len(&self) -> usize {
        self.d1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d1.is_empty()
    }

    pub fn derivative(&self, values: &[f64], parity: Parity, i: usize) -> f64 {
        apply5(&self.d1[i], values, parity, i)
    }

    pub fn second_derivative(&self, values: &[f64], parity: Parity, i: usize) -> f64 {
        apply5(&self.d2[i], values, parity, i)
    }

    pub fn midpoint_value(&self, values: &[f64], parity: Parity, i: usize) -> f64 {
        apply4(&self.mid_value[i], values, parity, i)
    }

    pub fn midpoint_derivative(&self, values: &[f64], parity: Parity, i: usize) -> f64 {
        apply4(&self.mid_d1[i], values, parity, i)
    }
}

fn is_uniform_staggered(params: &[f64]) -> bool {
    let h = PI / params.len() as f64;
    params.iter().enumerate().all(|(i, t)| (t - (-FRAC_PI_2 + (i as f64 + 0.5) * h)).abs() <= 1e-12)
}

/// Control-volume widths with edges at the midpoints and the poles.
fn midpoint_widths(params: &[f64]) -> Vec<f64> {
    let n = params.len();
    (0..n)
        .map(|i| {
            let lo = if i == 0 { -FRAC_PI_2 } else { 0.5 * (params[i - 1] + params[i]) };
            let hi = if i + 1 == n { FRAC_PI_2 } else { 0.5 * (params[i] + params[i + 1]) };
            hi - lo
        })
        .collect()
}

/// Fejér's first rule on the staggered grid, divided by `cos t`.
///
/// With `θ = t + pi/2` the nodes are the Chebyshev points and
/// `∫ G(t) cos t dt = ∫ G sin θ dθ`, which the rule integrates exactly for
/// `G` a cosine polynomial in `θ` of degree below `n`.
fn fejer_widths(params: &[f64]) -> Vec<f64> {
    let n = params.len();
    params
        .iter()
        .map(|t| {
            let theta = t + FRAC_PI_2;
            let (c2, s2) = ((2.0 * theta).cos(), (2.0 * theta).sin());
            let (mut c, mut s) = (1.0, 0.0);
            let mut acc = 0.0;
            for j in 1..=n / 2 {
                let nc = c * c2 - s * s2;
                s = s * c2 + c * s2;
                c = nc;
                let jj = j as f64;
                acc += c / (4.0 * jj * jj - 1.0);
            }
            2.0 / n as f64 * (1.0 - 2.0 * acc) / t.cos()
        })
        .collect()
}

/// Ratio of the discrete to the exact integral of `cos t` from the nearer
/// pole up to each interior midpoint.
fn flux_scale(params: &[f64], widths: &[f64]) -> Vec<f64> {
    let n = params.len();
    let mass: Vec<f64> = params.iter().zip(widths).map(|(t, w)| t.cos() * w).collect();
    let mut below = 0.0;
    let mut prefix = Vec::with_capacity(n);
    for m in &mass {
        below += m;
        prefix.push(below);
    }
    let total = below;
    (0..n.saturating_sub(1))
        .map(|m| {
            let e = 0.5 * (params[m] + params[m + 1]);
            if e <= 0.0 {
                prefix[m] / (1.0 + e.sin())
            } else {
                (total - prefix[m]) / (1.0 - e.sin())
            }
        })
        .collect()
}

#[inline]
fn apply5(w: &[f64; 5], values: &[f64], parity: Parity, i: usize) -> f64 {
    let i = i as isize;
    w.iter().enumerate().map(|(k, wk)| wk * ext_value(values, i - 2 + k as isize, parity)).sum()
}

#[inline]
fn apply4(w: &[f64; 4], values: &[f64], parity: Parity, i: usize) -> f64 {
    let i = i as isize;
    w.iter().enumerate().map(|(k, wk)| wk * ext_value(values, i - 1 + k as isize, parity)).sum()
}
