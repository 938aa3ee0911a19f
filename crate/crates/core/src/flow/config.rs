use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::FlowError;

/// Time integrator used by [`run`](super::run).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    /// Classical four-stage explicit scheme, `dt ~ h⁴`.
    Explicit,
    /// Linearly implicit Euler step, stiff part `Δ²` treated implicitly.
    Implicit,
}

impl FromStr for Integrator {
    type Err = FlowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explicit" | "rk4" => Ok(Integrator::Explicit),
            "implicit" => Ok(Integrator::Implicit),
            other => Err(FlowError::InvalidConfig(format!("unknown integrator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowConfig {
    pub sigma: f64,
    /// Safety factor on the explicit stability bound.
    pub dt_safety: f64,
    pub t_end: f64,
    pub max_steps: usize,
    pub projection: bool,
    /// Steps between equal-arclength resamplings; 0 disables.
    pub redistribute_every: usize,
    /// Ball radius for the curvature concentration monitor; 0 disables.
    pub monitor_rho: f64,
    /// Threshold on the normalized Helfrich residual.
    pub stationarity_tol: f64,
    pub initial_profile: Option<PathBuf>,
    /// Steps between stored snapshots; 0 keeps only the first and last.
    pub snapshot_every: usize,
    pub output_dir: Option<PathBuf>,
    pub integrator: Integrator,
    /// Fixed time step. Required by the implicit integrator unless the
    /// default `1e-6 (A/4π)²` is wanted; the explicit integrator uses it as
    /// an upper cap.
    pub dt: Option<f64>,
    /// Steps between monitor records.
    pub record_every: usize,
}

impl FlowConfig {
    pub fn new(sigma: f64) -> Self {
        FlowConfig {
            sigma,
            dt_safety: 0.5,
            t_end: 1e-3,
            max_steps: 1_000_000,
            projection: true,
            redistribute_every: 0,
            monitor_rho: 0.0,
            stationarity_tol: 1e-6,
            initial_profile: None,
            snapshot_every: 0,
            output_dir: None,
            integrator: Integrator::Implicit,
            dt: None,
            record_every: 1,
        }
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(FlowError::InvalidSigma(self.sigma));
        }
        let bad = |msg: &str| Err(FlowError::InvalidConfig(msg.to_string()));
        if !(self.dt_safety > 0.0 && self.dt_safety <= 1.0) {
            return bad("dt_safety must lie in (0, 1]");
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be positive");
        }
        if !(self.monitor_rho >= 0.0) {
            return bad("monitor_rho must be nonnegative");
        }
        if !(self.stationarity_tol >= 0.0) {
            return bad("stationarity_tol must be nonnegative");
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad("dt must be positive");
            }
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1");
        }
        Ok(())
    }

    /// Parses `key = value` lines. `#` starts a comment. Relative paths are
    /// resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self, FlowError> {
        let mut cfg = FlowConfig::new(f64::NAN);
        let mut have_sigma = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| FlowError::InvalidConfig(format!("line {}: expected `key = value`", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let err = |what: &str| FlowError::InvalidConfig(format!("line {}: {key}: {what}", lineno + 1));
            let num = || value.parse::<f64>().map_err(|_| err("expected a number"));
            let count = || value.parse::<usize>().map_err(|_| err("expected a nonnegative integer"));
            let path = || {
                let p = PathBuf::from(value);
                match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                }
            };
            match key {
                "sigma" => {
                    cfg.sigma = num()?;
                    have_sigma = true;
                }
                "dt_safety" => cfg.dt_safety = num()?,
                "t_end" => cfg.t_end = num()?,
                "max_steps" => cfg.max_steps = count()?,
                "projection" => {
                    cfg.projection = match value {
                        "true" | "on" | "1" | "yes" => true,
                        "false" | "off" | "0" | "no" => false,
                        _ => return Err(err("expected true or false")),
                    }
                }
                "redistribute_every" => cfg.redistribute_every = count()?,
                "monitor_rho" => cfg.monitor_rho = num()?,
                "stationarity_tol" => cfg.stationarity_tol = num()?,
                "initial_profile" => cfg.initial_profile = Some(path()),
                "snapshot_every" => cfg.snapshot_every = count()?,
                "output_dir" => cfg.output_dir = Some(path()),
                "integrator" => cfg.integrator = value.parse()?,
                "dt" => cfg.dt = Some(num()?),
                "record_every" => cfg.record_every = count()?,
                _ => return Err(err("unknown key")),
            }
        }
        if !have_sigma {
            return Err(FlowError::InvalidConfig("missing key `sigma`".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "sigma = 0.8\ndt_safety=0.25\nt_end = 2e-3 # comment\nmax_steps = 10\nprojection = off\n\
                    redistribute_every = 5\nmonitor_rho = 0.5\nstationarity_tol = 1e-5\ninitial_profile = a.txt\n\
                    snapshot_every = 3\noutput_dir = out\nintegrator = explicit\ndt = 1e-7\nrecord_every = 2\n";
        let cfg = FlowConfig::parse(text, Some(Path::new("/base"))).unwrap();
        assert_eq!(cfg.sigma, 0.8);
        assert!(!cfg.projection);
        assert_eq!(cfg.initial_profile.unwrap(), PathBuf::from("/base/a.txt"));
        assert_eq!(cfg.integrator, Integrator::Explicit);
        assert_eq!(cfg.dt, Some(1e-7));
        assert_eq!(cfg.record_every, 2);
    }

    #[test]
    fn sigma_one_is_rejected() {
        assert_eq!(FlowConfig::parse("sigma = 1.0", None), Err(FlowError::InvalidSigma(1.0)));
        assert!(FlowConfig::parse("sigma = 0", None).is_err());
    }

    #[test]
    fn unknown_key_and_missing_sigma() {
        assert!(FlowConfig::parse("sigma = 0.5\nfoo = 1", None).is_err());
        assert!(FlowConfig::parse("t_end = 1", None).is_err());
    }
}
