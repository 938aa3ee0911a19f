//! Closed forms for the prolate spheroids `(a cos t cos θ, a cos t sin θ, sin t)`.
//!
//! All formulas are written in terms of `arcsin(e)/e` with `e = sqrt(1 - a²)`,
//! which is why `a = 1` is excluded; the round-sphere limits are exported as
//! constants instead.

use std::f64::consts::PI;

use thiserror::Error;

use crate::geometry::{compute_geometry, GeometryError, ProfileCurve};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpheroidError {
    #[error("semi-axis a = {0} outside (0, 1)")]
    OutOfRange(f64),
    #[error("isoperimetric ratio {0} outside (0, 1)")]
    RatioOutOfRange(f64),
    #[error("a table needs at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("no semi-axis found with ratio {0}")]
    BracketingFailed(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Limits at `a -> 1` (round unit sphere).
pub const LIMIT_WILLMORE: f64 = 4.0 * PI;
pub const LIMIT_RATIO: f64 = 1.0;
pub const LIMIT_AREA: f64 = 4.0 * PI;
pub const LIMIT_VOLUME: f64 = 4.0 * PI / 3.0;

/// Equatorial semi-axis of a prolate spheroid with polar semi-axis 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpheroidParam(f64);

impl SpheroidParam {
    /// Accepts `0 < a < 1`.
    pub fn new(a: f64) -> Result<Self, SpheroidError> {
        if a > 0.0 && a < 1.0 {
            Ok(SpheroidParam(a))
        } else {
            Err(SpheroidError::OutOfRange(a))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `arcsin(e) / e`, `e = sqrt(1 - a²)`.
    fn arc_ratio(self) -> f64 {
        let e = (1.0 - self.0 * self.0).sqrt();
        e.asin() / e
    }
}

/// Profile `r = a cos t, z = sin t` on the staggered grid; `a = 1` gives the
/// unit sphere.
pub fn spheroid_profile(a: f64, n: usize) -> Result<ProfileCurve, SpheroidError> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(SpheroidError::OutOfRange(a));
    }
    Ok(ProfileCurve::from_fn(n, |t| (a * t.cos(), t.sin()))?)
}

pub fn spheroid_volume(a: SpheroidParam) -> f64 {
    4.0 * PI / 3.0 * a.0 * a.0
}

pub fn spheroid_area(a: SpheroidParam) -> f64 {
    2.0 * PI * a.0 * (a.0 + a.arc_ratio())
}

pub fn spheroid_willmore(a: SpheroidParam) -> f64 {
    7.0 * PI / 3.0 + 2.0 * PI / 3.0 * a.0 * a.0 + PI / a.0 * a.arc_ratio()
}

pub fn spheroid_isoperimetric(a: SpheroidParam) -> f64 {
    let d = a.0 + a.arc_ratio();
    8.0 * a.0 / (d * d * d)
}

/// Below this `a` both gap formulas are evaluated in plain `f64`.
const CANCELLATION_START: f64 = 0.5;

/// `F(a)`; negative on the whole open interval.
///
/// The terms are `O(10)` while `F(a) ~ (1 - a²)³`, so for `a ≥ 1/2` the
/// formula is evaluated in 256-bit fixed point and rounded once.
pub fn gap_function(a: SpheroidParam) -> f64 {
    let x = a.0;
    if x >= CANCELLATION_START {
        return fixed::gap_function(x);
    }
    let q = a.arc_ratio();
    let d = x + q;
    14.0 + 4.0 * x * x + 6.0 * q / x - 3.0 * d * d * d / x
}

/// `W(f_a) - 4π / I(f_a)` from the closed forms of `W` and `I`, with the
/// same precision switch as [`gap_function`].
pub fn energy_gap(a: SpheroidParam) -> f64 {
    if a.0 >= CANCELLATION_START {
        return PI * fixed::willmore_gap_over_pi(a.0);
    }
    spheroid_willmore(a) - 4.0 * PI / spheroid_isoperimetric(a)
}

mod fixed {
    //! Fixed-point reals `x · 2^-BITS` on big integers. Enough for a few
    //! closed forms near `a = 1`; not a general number type.

    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    const BITS: u32 = 256;

    #[derive(Clone)]
    struct Fx(BigInt);

    impl Fx {
        fn int(k: i64) -> Fx {
            Fx(BigInt::from(k) << BITS)
        }

        /// Exact for every `f64` above `2^-BITS`.
        fn from_f64(x: f64) -> Fx {
            let (mantissa, exponent, sign) = num_traits::float::FloatCore::integer_decode(x);
            let m = BigInt::from(mantissa) * sign;
            let shift = BITS as i32 + exponent as i32;
            assert!(shift >= 0, "value below fixed-point resolution");
            Fx(m << shift as u32)
        }

        fn add(&self, o: &Fx) -> Fx {
            Fx(&self.0 + &o.0)
        }

        fn sub(&self, o: &Fx) -> Fx {
            Fx(&self.0 - &o.0)
        }

        fn mul(&self, o: &Fx) -> Fx {
            Fx((&self.0 * &o.0) >> BITS)
        }

        fn div(&self, o: &Fx) -> Fx {
            Fx((&self.0 << BITS) / &o.0)
        }

        fn scale(&self, num: i64, den: i64) -> Fx {
            Fx(&self.0 * num / den)
        }

        fn to_f64(&self) -> f64 {
            // Keep 64 significant bits before the conversion.
            let bits = self.0.bits() as i64;
            let drop = (bits - 64).max(0);
            let top = (&self.0 >> drop as u32).to_f64().expect("finite");
            top * 2f64.powi(drop as i32 - BITS as i32)
        }
    }

    /// `arcsin(e)/e = Σ_k C(2k,k) 4^-k m^k / (2k+1)` with `m = e² ≤ 3/4`.
    fn arc_ratio(m: &Fx) -> Fx {
        let mut sum = Fx::int(1);
        let mut term = Fx::int(1);
        for k in 1i64.. {
            term = term.mul(m).scale(2 * k - 1, 2 * k);
            if term.0.is_zero() {
                break;
            }
            sum = sum.add(&term.scale(1, 2 * k + 1));
        }
        sum
    }

    fn setup(a: f64) -> (Fx, Fx) {
        assert!((0.5..1.0).contains(&a));
        let x = Fx::from_f64(a);
        let m = Fx::int(1).sub(&x.mul(&x));
        (x.clone(), arc_ratio(&m))
    }

    pub(super) fn gap_function(a: f64) -> f64 {
        let (x, q) = setup(a);
        let d = x.add(&q);
        let d3 = d.mul(&d).mul(&d);
        let f = Fx::int(14).add(&x.mul(&x).scale(4, 1)).add(&q.scale(6, 1).div(&x)).sub(&d3.scale(3, 1).div(&x));
        f.to_f64()
    }

    /// `(W - 4π/I) / π` with `W/π` and `I` each from its own closed form.
    pub(super) fn willmore_gap_over_pi(a: f64) -> f64 {
        let (x, q) = setup(a);
        let w = Fx::int(7).scale(1, 3).add(&x.mul(&x).scale(2, 3)).add(&q.div(&x));
        let d = x.add(&q);
        let ratio = x.scale(8, 1).div(&d.mul(&d).mul(&d));
        w.sub(&Fx::int(4).div(&ratio)).to_f64()
    }

}

/// Both routes to the energy gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEvaluation {
    pub gap_function: f64,
    pub energy_gap: f64,
}

impl GapEvaluation {
    pub fn new(a: SpheroidParam) -> Self {
        GapEvaluation { gap_function: gap_function(a), energy_gap: energy_gap(a) }
    }

    /// `|energy_gap - (π/6) F| / |(π/6) F|`.
    pub fn identity_error(&self) -> f64 {
        let scaled = PI / 6.0 * self.gap_function;
        (self.energy_gap - scaled).abs() / scaled.abs()
    }
}

/// Relative errors of the discrete `A`, `V`, `W` against the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleErrors {
    pub area: f64,
    pub volume: f64,
    pub willmore: f64,
}

impl OracleErrors {
    pub fn max(&self) -> f64 {
        self.area.max(self.volume).max(self.willmore)
    }
}

/// Discretizes `f_a` on `n` nodes and compares with the closed forms.
pub fn discretization_errors(a: SpheroidParam, n: usize) -> Result<OracleErrors, SpheroidError> {
    let s = compute_geometry(&spheroid_profile(a.0, n)?)?;
    let rel = |x: f64, y: f64| (x - y).abs() / y;
    Ok(OracleErrors {
        area: rel(s.area, spheroid_area(a)),
        volume: rel(s.volume, spheroid_volume(a)),
        willmore: rel(s.willmore, spheroid_willmore(a)),
    })
}

/// Semi-axis `a` with `I(f_a) = sigma`.
///
/// Bisection on `(ε, 1 - ε)` assuming `I` increases with `a`; if the end
/// values do not bracket `sigma`, a uniform scan looks for a sign change.
pub fn invert_isoperimetric(sigma: f64) -> Result<SpheroidParam, SpheroidError> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(SpheroidError::RatioOutOfRange(sigma));
    }
    let g = |a: f64| spheroid_isoperimetric(SpheroidParam(a)) - sigma;
    let mut eps = 1e-3;
    let (mut lo, mut hi) = loop {
        let (lo, hi) = (eps, 1.0 - eps);
        if g(lo) < 0.0 && g(hi) > 0.0 {
            break (lo, hi);
        }
        if eps < 1e-12 {
            match scan_bracket(&g) {
                Some(b) => break b,
                None => return Err(SpheroidError::BracketingFailed(sigma)),
            }
        }
        eps *= 0.01;
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = if g(lo).abs() < g(hi).abs() { lo } else { hi };
    if g(a).abs() > 1e-12 {
        return Err(SpheroidError::BracketingFailed(sigma));
    }
    Ok(SpheroidParam(a))
}

fn scan_bracket(g: &impl Fn(f64) -> f64) -> Option<(f64, f64)> {
    let m = 10_000;
    let pts: Vec<f64> = (1..m).map(|k| k as f64 / m as f64).collect();
    pts.windows(2).find(|w| g(w[0]) < 0.0 && g(w[1]) >= 0.0).map(|w| (w[0], w[1]))
}

/// One row of the `a, F, energy_gap, I, W` table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub a: f64,
    pub gap_function: f64,
    pub energy_gap: f64,
    pub ratio: f64,
    pub willmore: f64,
}

/// Evenly spaced rows from `a_min` to `a_max` inclusive.
pub fn spheroid_table(a_min: f64, a_max: f64, steps: usize) -> Result<Vec<TableRow>, SpheroidError> {
    if !(a_min > 0.0 && a_min < a_max && a_max < 1.0) {
        return Err(SpheroidError::OutOfRange(if a_min > 0.0 && a_min < 1.0 { a_max } else { a_min }));
    }
    if steps < 2 {
        return Err(SpheroidError::TooFewRows(steps));
    }
    (0..steps)
        .map(|k| {
            let a = a_min + (a_max - a_min) * k as f64 / (steps - 1) as f64;
            let p = SpheroidParam::new(a)?;
            Ok(TableRow {
                a,
                gap_function: gap_function(p),
                energy_gap: energy_gap(p),
                ratio: spheroid_isoperimetric(p),
                willmore: spheroid_willmore(p),
            })
        })
        .collect()
}

pub const TABLE_HEADER: &str = "a,F,energy_gap,I,W";

pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.a, r.gap_function, r.energy_gap, r.ratio, r.willmore));
    }
    out
}
