//! Brute-force real-root oracle for small integer polynomials, written
//! without the crate's polynomial type.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

type Coeffs = Vec<BigRational>;

fn trim(mut c: Coeffs) -> Coeffs {
    while c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    c
}

fn rem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &c * bj;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quotient(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &c * bj;
        }
        q[shift] = c;
        r.pop();
    }
    q
}

fn derivative(a: &Coeffs) -> Coeffs {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect())
}

/// `p / gcd(p, p')`, same roots, all simple.
pub fn squarefree(p: &[i64]) -> Vec<f64> {
    let p = trim(p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
    let (mut a, mut b) = (p.clone(), derivative(&p));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    quotient(&p, &a).iter().map(|c| c.to_f64().unwrap()).collect()
}

pub fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub fn eval_exact(p: &[i64], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, &c| acc * x + BigRational::from_integer(BigInt::from(c)))
}

fn bisect(p: &[f64], mut a: f64, mut b: f64) -> f64 {
    if eval(p, a) == 0.0 {
        return a;
    }
    let sa = eval(p, a).signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let v = eval(p, m);
        if v == 0.0 {
            return m;
        }
        if v.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Roots of a polynomial with simple roots inside `[-bound, bound]`. Between
/// consecutive critical points the polynomial is monotone, so each such piece
/// holds at most one root, found by bisection.
fn isolate(p: &[f64], bound: f64) -> Vec<f64> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp: Vec<f64> = p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let mut breaks = vec![-bound];
    breaks.extend(isolate(&dp, bound));
    breaks.push(bound);
    let mut roots = Vec::new();
    for w in breaks.windows(2) {
        let (fa, fb) = (eval(p, w[0]), eval(p, w[1]));
        if fa == 0.0 {
            roots.push(w[0]);
        } else if fa.signum() != fb.signum() && fb != 0.0 {
            roots.push(bisect(p, w[0], w[1]));
        }
    }
    if eval(p, bound) == 0.0 {
        roots.push(bound);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    roots
}

/// Distinct real roots of an integer polynomial, ascending. Panics if the
/// monotone-piece isolation and a dense sign-change scan disagree.
pub fn real_roots(p: &[i64]) -> Vec<f64> {
    let q = squarefree(p);
    if q.len() <= 1 {
        return Vec::new();
    }
    let lead = q.last().unwrap().abs();
    let bound = 1.0 + q.iter().map(|c| c.abs() / lead).fold(0.0, f64::max);
    let roots = isolate(&q, bound);

    let steps = 200_000;
    let mut scan = Vec::new();
    let mut prev = (-bound, eval(&q, -bound));
    for j in 1..=steps {
        let x = -bound + 2.0 * bound * j as f64 / steps as f64;
        let v = eval(&q, x);
        if v.signum() != prev.1.signum() {
            scan.push(bisect(&q, prev.0, x));
        }
        prev = (x, v);
    }
    // Roots closer than the scan spacing can hide from the scan; never the
    // other way round.
    assert!(scan.len() <= roots.len(), "oracle inconsistent for {p:?}: {scan:?} vs {roots:?}");
    for s in &scan {
        assert!(roots.iter().any(|r| (r - s).abs() < 1e-6), "oracle inconsistent for {p:?}: {scan:?} vs {roots:?}");
    }
    roots
}

pub fn random_poly(rng: &mut impl Rng) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(0..=6);
        let p: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if p.iter().any(|&c| c != 0) {
            return p;
        }
    }
}

/// Rational interval with endpoints in `[-6, 6]` that avoids the roots.
pub fn random_interval(rng: &mut impl Rng, p: &[i64], roots: &[f64]) -> (BigRational, BigRational) {
    let point = |rng: &mut dyn rand::RngCore| {
        let den = rng.gen_range(1..=16i64);
        BigRational::new(BigInt::from(rng.gen_range(-6 * den..=6 * den)), BigInt::from(den))
    };
    loop {
        let (a, b) = (point(rng), point(rng));
        if a == b {
            continue;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let clear = |x: &BigRational| {
            let xf = x.to_f64().unwrap();
            !eval_exact(p, x).is_zero() && roots.iter().all(|r| (r - xf).abs() > 1e-9)
        };
        if clear(&lo) && clear(&hi) {
            return (lo, hi);
        }
    }
}

pub fn count_in(roots: &[f64], lo: &BigRational, hi: &BigRational) -> usize {
    let (l, h) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
    roots.iter().filter(|&&r| r > l && r <= h).count()
}
