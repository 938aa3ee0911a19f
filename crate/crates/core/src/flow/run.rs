use std::f64::consts::PI;

use super::integrate::{implicit_step, project_with, redistribute, rk4_step, stable_dt};
use super::multiplier::{denominator, lagrange_multiplier, normal_velocity, normalized_residual};
use super::{FlowConfig, FlowError, Integrator};
use crate::geometry::stencil::Stencils;
use crate::geometry::{compute_geometry, compute_with_stencils, curvature_concentration, GeometricState, ProfileCurve};

/// Diagnostics of one recorded flow state.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorRecord {
    pub t: f64,
    pub step: usize,
    pub willmore: f64,
    pub umbilic: f64,
    pub area: f64,
    pub volume: f64,
    pub ratio: f64,
    pub lambda: f64,
    /// `D = ∫|3H/A - 2/V|² dμ`.
    pub denominator: f64,
    pub lambda_over_area: f64,
    /// `∫₀ᵗ λ²/A² dτ` by the trapezoidal rule over records.
    pub cum_lambda: f64,
    /// `∫ ξ² dμ` for the normal speed `ξ`.
    pub dissipation: f64,
    /// NaN when the monitor is disabled.
    pub kappa: f64,
    /// Normalized Helfrich residual.
    pub residual: f64,
    /// Step that led to this record; 0 for the initial one.
    pub dt: f64,
    /// `|∫ ⟨∇I, ∂_t f⟩ dμ| / (‖∇I‖ ‖∂_t f‖)`.
    pub orthogonality: f64,
    /// `∫ ξ dμ`.
    pub mean_speed: f64,
    /// `∫ |A⁰|² H dμ`.
    pub umbilic_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    ReachedEnd,
    Stationary,
    Aborted(String),
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Termination::ReachedEnd => write!(f, "reached t_end"),
            Termination::Stationary => write!(f, "stationary"),
            Termination::Aborted(reason) => write!(f, "aborted: {reason}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlowTrace {
    pub sigma: f64,
    pub monitor_rho: f64,
    pub initial: ProfileCurve,
    pub snapshots: Vec<(f64, ProfileCurve)>,
    pub records: Vec<MonitorRecord>,
    pub termination: Termination,
    /// Records at which a bound that holds for the continuous flow was
    /// violated beyond `1e-6` relative slack.
    pub warnings: Vec<String>,
    pub steps: usize,
}

impl FlowTrace {
    pub fn last(&self) -> &MonitorRecord {
        self.records.last().expect("a trace always holds the initial record")
    }

    pub fn final_curve(&self) -> &ProfileCurve {
        &self.snapshots.last().expect("a trace always holds the initial snapshot").1
    }

    /// `(W₀ - W₀(t)) - ∫₀ᵗ dissipation` relative to the drop, by the
    /// trapezoidal rule over records.
    pub fn energy_balance(&self) -> (f64, f64) {
        let first = &self.records[0];
        let last = self.last();
        let drop = first.umbilic - last.umbilic;
        let dissipated: f64 =
            self.records.windows(2).map(|w| 0.5 * (w[1].t - w[0].t) * (w[0].dissipation + w[1].dissipation)).sum();
        (drop, dissipated)
    }
}

/// A priori bounds available when `W(f₀) < 4π/σ`.
struct Bounds {
    sigma: f64,
    w0: f64,
}

impl Bounds {
    fn check(&self, rec: &MonitorRecord, warnings: &mut Vec<String>) {
        let root = (4.0 * PI / self.sigma).sqrt();
        let gap0 = root - self.w0.sqrt();
        let d_min = 36.0 * gap0 * gap0 / (rec.area * rec.area);
        if rec.denominator < d_min * (1.0 - 1e-6) {
            warnings.push(format!("t = {}: denominator {} below lower bound {}", rec.t, rec.denominator, d_min));
        }
        let gap = root - rec.willmore.sqrt();
        if gap > 0.0 {
            let bound = rec.area.sqrt() / (6.0 * gap) * (rec.mean_speed + rec.umbilic_mean).abs();
            if rec.lambda.abs() > bound * (1.0 + 1e-6) {
                warnings.push(format!("t = {}: |lambda| {} above bound {}", rec.t, rec.lambda.abs(), bound));
            }
        } else {
            warnings.push(format!("t = {}: W {} reached 4pi/sigma", rec.t, rec.willmore));
        }
    }
}

fn record(
    curve: &ProfileCurve,
    state: &GeometricState,
    config: &FlowConfig,
    t: f64,
    step: usize,
    dt: f64,
    prev: Option<&MonitorRecord>,
) -> Result<MonitorRecord, FlowError> {
    let lambda = lagrange_multiplier(state, config.sigma)?;
    let split = normal_velocity(state, lambda);
    let xi = &split.total;
    let grad_i: Vec<f64> = state.ratio_direction().iter().map(|b| config.sigma * b).collect();
    let dissipation = state.inner(xi, xi);
    let orthogonality = state.inner(&grad_i, xi).abs() / (state.l2_norm(&grad_i) * dissipation.sqrt());
    let umbilic_mean: f64 = state.integrate(&(0..state.len()).map(|i| state.a0_sq[i] * state.h[i]).collect::<Vec<_>>());
    let ratio_sq = (lambda / state.area).powi(2);
    let cum_lambda = match prev {
        Some(p) => p.cum_lambda + 0.5 * (t - p.t) * ((p.lambda / p.area).powi(2) + ratio_sq),
        None => 0.0,
    };
    let kappa =
        if config.monitor_rho > 0.0 { curvature_concentration(curve, state, config.monitor_rho) } else { f64::NAN };
    Ok(MonitorRecord {
        t,
        step,
        willmore: state.willmore,
        umbilic: state.umbilic,
        area: state.area,
        volume: state.volume,
        ratio: state.ratio,
        lambda,
        denominator: denominator(state),
        lambda_over_area: lambda / state.area,
        cum_lambda,
        dissipation,
        kappa,
        residual: normalized_residual(state, lambda),
        dt,
        orthogonality,
        mean_speed: state.integrate(xi),
        umbilic_mean,
    })
}

/// Default implicit step relative to the natural time scale `(A/4π)²`.
const IMPLICIT_DT_FACTOR: f64 = 1e-6;

/// Integrates the flow from `initial` until `t_end`, stationarity, the step
/// budget, or a breakdown.
///
/// Fails up front if `σ ∉ (0,1)`, if the mean curvature of `initial` is
/// (nearly) constant, or if `I(initial)` is not within reach of `σ`.
pub fn run(initial: &ProfileCurve, config: &FlowConfig) -> Result<FlowTrace, FlowError> {
    config.validate()?;
    let sigma = config.sigma;
    let state0 = compute_geometry(initial)?;
    if let Err(FlowError::DegenerateDenominator { .. }) = lagrange_multiplier(&state0, sigma) {
        return Err(FlowError::ConstantMeanCurvature);
    }
    let mismatch = (state0.ratio - sigma).abs();
    let mut curve = if mismatch == 0.0 {
        initial.clone()
    } else if config.projection && mismatch <= 1e-2 {
        project_with(initial, &Stencils::new(initial.params()), sigma)?
    } else if !config.projection && mismatch <= 1e-8 {
        initial.clone()
    } else {
        return Err(FlowError::RatioMismatch { actual: state0.ratio, sigma });
    };

    let st = Stencils::new(curve.params());
    let mut state = compute_with_stencils(&curve, &st)?;
    let bounds = (state.willmore < 4.0 * PI / sigma).then_some(Bounds { sigma, w0: state.willmore });
    let mut warnings = Vec::new();
    let mut records = vec![record(&curve, &state, config, 0.0, 0, 0.0, None)?];
    if let Some(b) = &bounds {
        b.check(&records[0], &mut warnings);
    }
    let mut snapshots = vec![(0.0, curve.clone())];
    let default_dt = config.dt.unwrap_or(IMPLICIT_DT_FACTOR * (state.area / (4.0 * PI)).powi(2));

    let mut t = 0.0;
    let mut steps = 0usize;
    let mut last_dt = 0.0;
    let termination = loop {
        if records.last().map(|r| r.residual < config.stationarity_tol).unwrap_or(false) {
            break Termination::Stationary;
        }
        let remaining = config.t_end - t;
        if remaining <= config.t_end * 1e-14 {
            break Termination::ReachedEnd;
        }
        if steps >= config.max_steps {
            break Termination::Aborted("step budget exhausted".into());
        }
        let mut dt = match config.integrator {
            Integrator::Implicit => default_dt,
            Integrator::Explicit => {
                let stable = stable_dt(&state, config.dt_safety);
                config.dt.map_or(stable, |cap| cap.min(stable))
            }
        };
        if dt >= remaining {
            dt = remaining;
        }
        let advanced = match config.integrator {
            Integrator::Implicit => implicit_step(&curve, &st, &state, sigma, dt),
            Integrator::Explicit => rk4_step(&curve, &st, sigma, dt),
        };
        let next = advanced.and_then(|c| {
            let c = if config.redistribute_every > 0 && (steps + 1).is_multiple_of(config.redistribute_every) {
                redistribute(&c)?
            } else {
                c
            };
            if config.projection {
                project_with(&c, &st, sigma)
            } else {
                Ok(c)
            }
        });
        let next = match next {
            Ok(c) => c,
            Err(e) => break Termination::Aborted(e.to_string()),
        };
        curve = next;
        t = if dt == remaining { config.t_end } else { t + dt };
        steps += 1;
        last_dt = dt;
        state = match compute_with_stencils(&curve, &st) {
            Ok(s) => s,
            Err(e) => break Termination::Aborted(FlowError::from(e).to_string()),
        };
        let at_end = t >= config.t_end;
        if steps.is_multiple_of(config.record_every) || at_end {
            match record(&curve, &state, config, t, steps, dt, records.last()) {
                Ok(rec) => {
                    if let Some(b) = &bounds {
                        b.check(&rec, &mut warnings);
                    }
                    records.push(rec);
                }
                Err(e) => break Termination::Aborted(e.to_string()),
            }
        }
        if config.snapshot_every > 0 && steps.is_multiple_of(config.snapshot_every) {
            snapshots.push((t, curve.clone()));
        }
    };
    if records.last().map(|r| r.t < t).unwrap_or(false) {
        if let Ok(rec) = record(&curve, &state, config, t, steps, last_dt, records.last()) {
            records.push(rec);
        }
    }
    if snapshots.last().map(|s| s.0 < t).unwrap_or(false) {
        snapshots.push((t, curve.clone()));
    }
    Ok(FlowTrace {
        sigma,
        monitor_rho: config.monitor_rho,
        initial: initial.clone(),
        snapshots,
        records,
        termination,
        warnings,
        steps,
    })
}
