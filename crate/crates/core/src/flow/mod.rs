//! Isoperimetric-ratio-preserving Willmore flow of axisymmetric surfaces.

mod config;
mod integrate;
mod multiplier;
mod output;
mod rescale;
mod run;

pub use config::{FlowConfig, Integrator};
pub use integrate::{project_isoperimetric, redistribute, stable_dt, step, step_implicit, PROJECTION_TOL};
pub use multiplier::{
    denominator, denominator_floor, fit_helfrich, helfrich_residual, lagrange_multiplier, lagrange_multiplier_direct,
    normal_velocity, normalized_residual, HelfrichFit, VelocitySplit,
};
pub use output::{monitor_csv, MONITOR_HEADER};
pub use rescale::{parabolic_rescale, rescale_check, RescaleCheck};
pub use run::{run, FlowTrace, MonitorRecord, Termination};

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("sigma must lie strictly between 0 and 1 (the flow is singular at sigma = 1), got {0}")]
    InvalidSigma(f64),
    #[error("multiplier denominator {value:e} is below the floor {floor:e}; mean curvature is nearly constant")]
    DegenerateDenominator { value: f64, floor: f64 },
    #[error("enclosed volume vanishes")]
    ZeroVolume,
    #[error("initial surface has (nearly) constant mean curvature")]
    ConstantMeanCurvature,
    #[error("initial ratio {actual} does not match sigma {sigma}")]
    RatioMismatch { actual: f64, sigma: f64 },
    #[error("projection onto I = {sigma} failed (ratio {ratio})")]
    ProjectionFailed { sigma: f64, ratio: f64 },
    #[error("immersion lost: {0}")]
    ImmersionLost(GeometryError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl From<GeometryError> for FlowError {
    fn from(e: GeometryError) -> Self {
        FlowError::ImmersionLost(e)
    }
}
