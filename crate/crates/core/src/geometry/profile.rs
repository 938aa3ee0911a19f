use std::f64::consts::{FRAC_PI_2, PI};

use super::GeometryError;

/// Smallest accepted node count.
pub const MIN_NODES: usize = 16;

/// Symmetry data at the two ends of the generating curve.
///
/// Both poles sit on the rotation axis and are never nodes themselves; the
/// curve meets the axis orthogonally, so across a pole `r` is odd and `z` is
/// even in the parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleClosure {
    pub south: f64,
    pub north: f64,
}

impl Default for PoleClosure {
    fn default() -> Self {
        PoleClosure { south: -FRAC_PI_2, north: FRAC_PI_2 }
    }
}

/// Generating curve `t -> (r(t), z(t))` of a closed axisymmetric surface.
///
/// The surface is obtained by rotating the curve around the `z`-axis. The
/// orientation convention makes the unit sphere `r = cos t, z = sin t` have
/// mean curvature `+2` and volume `+4pi/3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    params: Vec<f64>,
    radial: Vec<f64>,
    height: Vec<f64>,
    closure: PoleClosure,
}

/// Staggered uniform grid: `t_i = -pi/2 + (i + 1/2) pi / n`.
pub fn staggered_params(n: usize) -> Vec<f64> {
    let h = PI / n as f64;
    (0..n).map(|i| -FRAC_PI_2 + (i as f64 + 0.5) * h).collect()
}

impl ProfileCurve {
    pub fn new(params: Vec<f64>, radial: Vec<f64>, height: Vec<f64>) -> Result<Self, GeometryError> {
        let n = params.len();
        if radial.len() != n || height.len() != n {
            return Err(GeometryError::LengthMismatch { expected: n, found: radial.len().min(height.len()) });
        }
        if n < MIN_NODES {
            return Err(GeometryError::TooFewNodes(n));
        }
        let closure = PoleClosure::default();
        for (i, t) in params.iter().enumerate() {
            if !(t.is_finite() && *t > closure.south && *t < closure.north) {
                return Err(GeometryError::ParamOutOfRange { index: i, value: *t });
            }
            if i > 0 && params[i - 1] >= *t {
                return Err(GeometryError::ParamsNotIncreasing(i));
            }
        }
        for (i, (&r, &z)) in radial.iter().zip(&height).enumerate() {
            if !(r.is_finite() && z.is_finite()) || r <= 0.0 {
                return Err(GeometryError::DegenerateNode { index: i });
            }
        }
        Ok(ProfileCurve { params, radial, height, closure })
    }

    /// Samples `t -> (r(t), z(t))` on the staggered grid with `n` nodes.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> (f64, f64)) -> Result<Self, GeometryError> {
        let params = staggered_params(n);
        let (radial, height) = params.iter().map(|&t| f(t)).unzip();
        ProfileCurve::new(params, radial, height)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn radial(&self) -> &[f64] {
        &self.radial
    }

    pub fn height(&self) -> &[f64] {
        &self.height
    }

    pub fn closure(&self) -> PoleClosure {
        self.closure
    }

    /// Image under `x -> alpha x`.
    pub fn scaled(&self, alpha: f64) -> ProfileCurve {
        ProfileCurve {
            params: self.params.clone(),
            radial: self.radial.iter().map(|r| alpha * r).collect(),
            height: self.height.iter().map(|z| alpha * z).collect(),
            closure: self.closure,
        }
    }

    /// Moves node `i` by `speed[i] * normal[i]`.
    pub fn displaced(&self, speed: &[f64], normal: &[[f64; 2]]) -> Result<ProfileCurve, GeometryError> {
        let n = self.len();
        if speed.len() != n || normal.len() != n {
            return Err(GeometryError::LengthMismatch { expected: n, found: speed.len().min(normal.len()) });
        }
        let radial = (0..n).map(|i| self.radial[i] + speed[i] * normal[i][0]).collect();
        let height = (0..n).map(|i| self.height[i] + speed[i] * normal[i][1]).collect();
        ProfileCurve::new(self.params.clone(), radial, height)
    }

    /// Same nodes with `z` shifted by `dz`.
    pub fn translated(&self, dz: f64) -> ProfileCurve {
        ProfileCurve {
            params: self.params.clone(),
            radial: self.radial.clone(),
            height: self.height.iter().map(|z| z + dz).collect(),
            closure: self.closure,
        }
    }

    /// Largest distance of a node from the origin.
    pub fn extent(&self) -> f64 {
        self.radial.iter().zip(&self.height).map(|(r, z)| r.hypot(*z)).fold(0.0, f64::max)
    }
}

/// Round sphere of the given radius centered at the origin.
pub fn sphere_profile(radius: f64, n: usize) -> Result<ProfileCurve, GeometryError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(GeometryError::NonPositiveRadius(radius));
    }
    if n < MIN_NODES {
        return Err(GeometryError::TooFewNodes(n));
    }
    ProfileCurve::from_fn(n, |t| (radius * t.cos(), radius * t.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_nodes_are_on_the_circle() {
        let c = sphere_profile(1.0, 256).unwrap();
        for i in 0..c.len() {
            let t = c.params()[i];
            assert!((c.radial()[i] - t.cos()).abs() < 1e-15);
            assert!((c.height()[i] - t.sin()).abs() < 1e-15);
        }
        assert!(c.params()[0] > -FRAC_PI_2 && c.params()[255] < FRAC_PI_2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(sphere_profile(0.0, 64), Err(GeometryError::NonPositiveRadius(_))));
        assert!(matches!(sphere_profile(-1.0, 64), Err(GeometryError::NonPositiveRadius(_))));
        assert!(matches!(sphere_profile(1.0, 8), Err(GeometryError::TooFewNodes(8))));
        let p = staggered_params(16);
        let mut r = vec![1.0; 16];
        r[3] = 0.0;
        assert!(matches!(
            ProfileCurve::new(p.clone(), r, vec![0.0; 16]),
            Err(GeometryError::DegenerateNode { index: 3 })
        ));
        let mut q = p.clone();
        q.swap(4, 5);
        assert!(matches!(
            ProfileCurve::new(q, vec![1.0; 16], vec![0.0; 16]),
            Err(GeometryError::ParamsNotIncreasing(5))
        ));
    }
}
