//! Discrete differential geometry of axisymmetric surfaces.

mod concentration;
mod io;
mod laplace;
mod profile;
mod state;
pub mod stencil;
mod variation;

pub use concentration::{curvature_concentration, AXIS_CANDIDATES};
pub use io::{read_profile, write_profile, PROFILE_HEADER};
pub use laplace::{laplace_beltrami, LaplaceBeltrami};
pub use profile::{sphere_profile, staggered_params, PoleClosure, ProfileCurve, MIN_NODES};
pub use state::{compute_geometry, GeometricState};
pub(crate) use state::{compute_with_stencils, measure, ratio_differential};
pub use variation::{smooth_direction, variation_check, Functional, VariationPair, FD_STEP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("need at least {min} nodes, got {0}", min = MIN_NODES)]
    TooFewNodes(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parameter {value} at node {index} is outside (-pi/2, pi/2)")]
    ParamOutOfRange { index: usize, value: f64 },
    #[error("parameters are not strictly increasing at node {0}")]
    ParamsNotIncreasing(usize),
    #[error("curve is not an immersion at node {index}")]
    DegenerateNode { index: usize },
    #[error("isoperimetric ratio is zero; its variation is undefined")]
    ZeroRatio,
    #[error("profile file: {0}")]
    Format(String),
    #[error("profile file: {0}")]
    Io(String),
}
