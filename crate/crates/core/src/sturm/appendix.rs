//! The polynomial bound behind `F(a) < 0` on `(0, 1)`.
//!
//! With `a = cos x` the claim is `G(x) = F(cos x) sin³x cos x < 0` on
//! `(0, π/2)`. Replacing each sine and cosine in the expanded `G` by a Taylor
//! polynomial that over- or underestimates it gives a polynomial `k > G`
//! whose sign is decided exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::integer;
use super::{RationalPolynomial, SturmError};

/// `k(x) = x⁹ q(x) / K_SCALE`.
pub const K_SCALE: i64 = 5_852_528_640_000;

/// Coefficients of `q` at `x⁰, x², …, x¹⁸`, equal to those of `p` at `z⁰…z⁹`.
pub const PRINTED_COEFFICIENTS: [i64; 10] = [
    -984_711_168_000,
    660_770_611_200,
    -209_922_048_000,
    40_156_646_400,
    -5_069_859_840,
    437_184_000,
    -25_717_120,
    994_464,
    -22_944,
    241,
];

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn signed_inverse_factorial(k: u32, n: u32) -> BigRational {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    BigRational::new(BigInt::from(sign), factorial(n))
}

/// `Σ_{k=0}^{N} (-1)^k x^{2k} / (2k)!`.
pub fn taylor_cos(n: u32) -> RationalPolynomial {
    (0..=n).fold(RationalPolynomial::zero(), |acc, k| {
        &acc + &RationalPolynomial::monomial(signed_inverse_factorial(k, 2 * k), 2 * k as usize)
    })
}

/// `Σ_{k=0}^{N} (-1)^k x^{2k+1} / (2k+1)!`.
pub fn taylor_sin(n: u32) -> RationalPolynomial {
    (0..=n).fold(RationalPolynomial::zero(), |acc, k| {
        &acc + &RationalPolynomial::monomial(signed_inverse_factorial(k, 2 * k + 1), 2 * k as usize + 1)
    })
}

/// `G` with `cos` and `sin` replaced by the given polynomials:
/// `-3x³ - 9x² c₁s₁ + 6x s₂² - 9x c₁² s₁² + 14 c₂ s₂³ + c₂³ s₂³`.
/// Products are cut after degree `cut` when given.
fn g_template(
    c1: &RationalPolynomial,
    s1: &RationalPolynomial,
    c2: &RationalPolynomial,
    s2: &RationalPolynomial,
    cut: Option<usize>,
) -> RationalPolynomial {
    let mul = |a: &RationalPolynomial, b: &RationalPolynomial| match cut {
        Some(d) => (a * b).truncate(d),
        None => a * b,
    };
    let x = RationalPolynomial::monomial(BigRational::one(), 1);
    let k = |v: i64| RationalPolynomial::constant(integer(v));
    let s2_sq = mul(s2, s2);
    let s2_cu = mul(&s2_sq, s2);
    let c1s1 = mul(c1, s1);
    let c2_cu = mul(&mul(c2, c2), c2);
    let terms = [
        &k(-3) * &x.pow(3),
        mul(&(&k(-9) * &x.pow(2)), &c1s1),
        mul(&(&k(6) * &x), &s2_sq),
        mul(&(&k(-9) * &x), &mul(&c1s1, &c1s1)),
        mul(&(&k(14) * c2), &s2_cu),
        mul(&c2_cu, &s2_cu),
    ];
    terms.iter().fold(RationalPolynomial::zero(), |acc, t| &acc + t)
}

/// Negative terms use the lower Taylor bounds `T³`, positive ones the upper
/// bounds `T²`.
pub fn bound_polynomial_k() -> RationalPolynomial {
    g_template(&taylor_cos(3), &taylor_sin(3), &taylor_cos(2), &taylor_sin(2), None)
}

/// `q = K_SCALE · k / x⁹`, checked against the printed coefficients.
pub fn extract_q(k: &RationalPolynomial) -> Result<RationalPolynomial, SturmError> {
    if let Some(low) = (0..9).find(|&d| !k.coefficient(d).is_zero()) {
        return Err(SturmError::NotDivisible { degree: low });
    }
    let scale = integer(K_SCALE);
    let q = RationalPolynomial::new(k.coefficients().iter().skip(9).map(|c| c * &scale).collect());
    check_printed_q(&q)?;
    Ok(q)
}

/// Exact comparison of `q` with the printed even-degree coefficients.
pub fn check_printed_q(q: &RationalPolynomial) -> Result<(), SturmError> {
    let expected = RationalPolynomial::from_integers(&PRINTED_COEFFICIENTS).compose_square();
    let len = q.coefficients().len().max(expected.coefficients().len());
    for d in 0..len {
        let (found, want) = (q.coefficient(d), expected.coefficient(d));
        if found != want {
            return Err(SturmError::CoefficientMismatch {
                degree: d,
                expected: want.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(())
}

/// `p(z)` with `p(x²) = q(x)`.
pub fn substitute_even(q: &RationalPolynomial) -> Result<RationalPolynomial, SturmError> {
    if let Some((d, _)) = q.coefficients().iter().enumerate().find(|(d, c)| d % 2 == 1 && !c.is_zero()) {
        return Err(SturmError::OddTermPresent { degree: d });
    }
    Ok(RationalPolynomial::new(q.coefficients().iter().step_by(2).cloned().collect()))
}

/// Degree of the Taylor series of `G` used below `SERIES_LIMIT`.
const SERIES_DEGREE: usize = 41;
const SERIES_LIMIT: f64 = 0.5;

/// `G(x)` in double precision.
///
/// `G ~ -0.2 x⁹` near 0 while its terms are `O(x³)`, so small arguments go
/// through the exact Taylor coefficients of `G` instead of the closed form.
#[derive(Debug, Clone)]
pub struct GEvaluator {
    series: Vec<f64>,
}

impl Default for GEvaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl GEvaluator {
    pub fn new() -> Self {
        // Orders 20 are exact through degree 41.
        let (c, s) = (taylor_cos(20), taylor_sin(20));
        let series = g_template(&c, &s, &c, &s, Some(SERIES_DEGREE));
        GEvaluator {
            series: series.coefficients().iter().map(|v| num_traits::ToPrimitive::to_f64(v).unwrap_or(0.0)).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x.abs() < SERIES_LIMIT {
            return self.series.iter().rev().fold(0.0, |acc, c| acc * x + c);
        }
        let (s, c) = x.sin_cos();
        -3.0 * x.powi(3) - 9.0 * x * x * c * s + 6.0 * x * s * s - 9.0 * x * c * c * s * s
            + 14.0 * c * s.powi(3)
            + c.powi(3) * s.powi(3)
    }
}

/// `cos x - T_cos^N(x)` summed directly from the series tail.
pub fn cos_tail(n: u32, x: f64) -> f64 {
    series_tail(x, 2 * (n + 1), n + 1)
}

/// `sin x - T_sin^N(x)` summed directly from the series tail.
pub fn sin_tail(n: u32, x: f64) -> f64 {
    series_tail(x, 2 * (n + 1) + 1, n + 1)
}

/// `Σ_{j≥0} (-1)^{k+j} x^{p+2j} / (p+2j)!` with `p` the first power and `k`
/// its index in the series.
fn series_tail(x: f64, first_power: u32, first_index: u32) -> f64 {
    let mut term = (1..=first_power).fold(1.0, |acc, m| acc * x / m as f64);
    if first_index % 2 == 1 {
        term = -term;
    }
    let mut sum = 0.0;
    let mut p = first_power;
    for _ in 0..60 {
        sum += term;
        term *= -x * x / ((p + 1) * (p + 2)) as f64;
        p += 2;
        if term.abs() <= f64::EPSILON * sum.abs() * 1e-3 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::super::poly::rational;
    use super::*;

    #[test]
    fn low_order_taylor_polynomials() {
        assert_eq!(taylor_cos(1), RationalPolynomial::new(vec![integer(1), integer(0), rational(-1, 2)]));
        assert_eq!(taylor_sin(0), RationalPolynomial::monomial(integer(1), 1));
    }

    #[test]
    fn k_has_degree_27_and_factors_through_q() {
        let k = bound_polynomial_k();
        assert_eq!(k.degree(), Some(27));
        let q = extract_q(&k).unwrap();
        assert_eq!(q.degree(), Some(18));
        assert_eq!(q.coefficient(0), integer(-984_711_168_000));
        assert_eq!(q.coefficient(18), integer(241));
        assert!((0..=18).filter(|d| d % 2 == 1).all(|d| q.coefficient(d).is_zero()));
        let back = &RationalPolynomial::monomial(rational(1, K_SCALE), 9) * &q;
        assert_eq!(back, k);
    }

    #[test]
    fn substitution_round_trips() {
        let q = extract_q(&bound_polynomial_k()).unwrap();
        let p = substitute_even(&q).unwrap();
        assert_eq!(p.degree(), Some(9));
        assert_eq!(p.leading(), Some(&integer(241)));
        assert_eq!(p.eval(&BigRational::zero()), integer(-984_711_168_000));
        assert_eq!(p.compose_square(), q);
        let odd = RationalPolynomial::from_integers(&[1, 0, 2, 5]);
        assert_eq!(substitute_even(&odd), Err(SturmError::OddTermPresent { degree: 3 }));
    }

    #[test]
    fn tampered_q_is_caught() {
        let q = extract_q(&bound_polynomial_k()).unwrap();
        let mut c = q.coefficients().to_vec();
        c[4] = -c[4].clone();
        let err = check_printed_q(&RationalPolynomial::new(c)).unwrap_err();
        assert!(matches!(err, SturmError::CoefficientMismatch { degree: 4, .. }));
        let mut shifted = bound_polynomial_k().coefficients().to_vec();
        shifted[3] = integer(1);
        assert!(matches!(extract_q(&RationalPolynomial::new(shifted)), Err(SturmError::NotDivisible { degree: 3 })));
    }

    #[test]
    fn tails_match_library_away_from_zero() {
        for x in [0.7, 1.0, 1.5] {
            let t = taylor_cos(3).eval_f64(x);
            assert!((cos_tail(3, x) - (x.cos() - t)).abs() < 1e-14);
            let t = taylor_sin(2).eval_f64(x);
            assert!((sin_tail(2, x) - (x.sin() - t)).abs() < 1e-14);
        }
    }

    #[test]
    fn g_series_and_closed_form_agree_at_switch() {
        let g = GEvaluator::new();
        let x: f64 = 0.5;
        let series: f64 = g.series.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let closed = g.eval(x);
        assert!((series - closed).abs() < 1e-12 * closed.abs(), "{series} {closed}");
        // 40-digit references.
        assert!((g.eval(0.1) / -2.018_076_444_894_092_6e-10 - 1.0).abs() < 1e-12);
        assert!((g.eval(0.5) / -3.350_578_122_964_856e-4 - 1.0).abs() < 1e-12);
    }
}
