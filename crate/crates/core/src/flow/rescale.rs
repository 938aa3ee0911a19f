use super::{run, FlowConfig, FlowError, FlowTrace};
use crate::geometry::ProfileCurve;

/// Trace of the flow `f̃(t) = f(r⁴ t) / r`.
///
/// # Panics
/// If `r` is not positive and finite.
pub fn parabolic_rescale(trace: &FlowTrace, r: f64) -> FlowTrace {
    assert!(r > 0.0 && r.is_finite(), "rescaling factor must be positive");
    let r2 = r * r;
    let r4 = r2 * r2;
    let mut records = trace.records.clone();
    for rec in &mut records {
        rec.t /= r4;
        rec.dt /= r4;
        rec.area /= r2;
        rec.volume /= r2 * r;
        rec.denominator *= r4;
        rec.lambda_over_area *= r2;
        rec.dissipation *= r4;
        rec.mean_speed *= r;
        rec.umbilic_mean *= r;
    }
    let mut cum = 0.0;
    for i in 0..records.len() {
        if i > 0 {
            let (p, c) = (&records[i - 1], &records[i]);
            cum += 0.5 * (c.t - p.t) * ((p.lambda / p.area).powi(2) + (c.lambda / c.area).powi(2));
        }
        records[i].cum_lambda = cum;
    }
    FlowTrace {
        sigma: trace.sigma,
        monitor_rho: trace.monitor_rho / r,
        initial: trace.initial.scaled(1.0 / r),
        snapshots: trace.snapshots.iter().map(|(t, c)| (t / r4, c.scaled(1.0 / r))).collect(),
        records,
        termination: trace.termination.clone(),
        warnings: trace.warnings.clone(),
        steps: trace.steps,
    }
}

/// Comparison of a rescaled trace with the transformation rules and with a
/// run started from the rescaled initial surface.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaleCheck {
    pub r: f64,
    /// Final `∫λ²/A² dt` of the original and the transformed trace.
    pub cum_lambda: (f64, f64),
    /// Relative difference of the two.
    pub cum_lambda_gap: f64,
    /// Largest snapshot distance between the transformed and the fresh run,
    /// relative to the extent of the rescaled initial surface.
    pub profile_gap: f64,
    /// Largest multiplier difference relative to the largest `|λ|`.
    pub lambda_gap: f64,
}

impl RescaleCheck {
    pub fn passes(&self) -> bool {
        self.cum_lambda_gap <= 1e-12 && self.profile_gap <= 1e-6 && self.lambda_gap <= 1e-6
    }
}

/// Runs the flow from `initial` and from `initial / r` with time data scaled
/// by `r⁻⁴`, then compares.
pub fn rescale_check(initial: &ProfileCurve, config: &FlowConfig, r: f64) -> Result<RescaleCheck, FlowError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(FlowError::InvalidConfig(format!("rescaling factor must be positive, got {r}")));
    }
    let r4 = r.powi(4);
    let trace = run(initial, config)?;
    let scaled = parabolic_rescale(&trace, r);

    let small = initial.scaled(1.0 / r);
    let mut cfg = config.clone();
    cfg.t_end /= r4;
    cfg.dt = config.dt.map(|dt| dt / r4);
    cfg.monitor_rho /= r;
    let fresh = run(&small, &cfg)?;

    let (a, b) = (trace.last().cum_lambda, scaled.last().cum_lambda);
    let cum_lambda_gap = if a == 0.0 { b.abs() } else { (a - b).abs() / a.abs() };

    let extent = small.extent();
    let profile_gap = if fresh.snapshots.len() != scaled.snapshots.len() {
        f64::INFINITY
    } else {
        fresh
            .snapshots
            .iter()
            .zip(&scaled.snapshots)
            .flat_map(|((_, x), (_, y))| {
                let dr = x.radial().iter().zip(y.radial()).map(|(u, v)| (u - v).abs());
                let dz = x.height().iter().zip(y.height()).map(|(u, v)| (u - v).abs());
                dr.chain(dz).collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
            / extent
    };

    let lambda_max = scaled.records.iter().map(|rec| rec.lambda.abs()).fold(0.0, f64::max);
    let lambda_gap = if fresh.records.len() != scaled.records.len() {
        f64::INFINITY
    } else {
        fresh.records.iter().zip(&scaled.records).map(|(x, y)| (x.lambda - y.lambda).abs()).fold(0.0, f64::max)
            / lambda_max.max(f64::MIN_POSITIVE)
    };

    Ok(RescaleCheck { r, cum_lambda: (a, b), cum_lambda_gap, profile_gap, lambda_gap })
}
