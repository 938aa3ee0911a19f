use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::appendix::{
    bound_polynomial_k, check_printed_q, cos_tail, extract_q, sin_tail, substitute_even, GEvaluator, K_SCALE,
};
use super::{integer, RationalPolynomial, SturmChain};
use crate::spheroid::{gap_function, SpheroidParam};

/// Decimal upper bound for `π`.
pub const PI_UPPER: (i64, i64) = (3_141_592_654, 1_000_000_000);

/// Sample count of the floating-point checks on `(0, π/2)`.
const SAMPLES: usize = 10_000;
/// Sample count of the comparison with the closed-form gap function.
const BRIDGE_SAMPLES: usize = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Every intermediate object of the argument together with the outcome of
/// each check.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub k: RationalPolynomial,
    pub q: RationalPolynomial,
    pub p: Option<RationalPolynomial>,
    pub coefficients_match: bool,
    pub p_at_zero: Option<BigRational>,
    pub root_count: Option<usize>,
    pub pi_bound: bool,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn verdict(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    /// One `name: PASS|FAIL [detail]` line per step, then the verdict.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = writeln!(out, "{}: {} [{}]", s.name, if s.pass { "PASS" } else { "FAIL" }, s.detail);
        }
        let _ = writeln!(out, "VERDICT: {}", if self.verdict() { "PASS" } else { "FAIL" });
        out
    }
}

fn samples(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |j| (j as f64 + 0.5) / count as f64 * FRAC_PI_2)
}

fn taylor_bounds_step() -> Step {
    // cos ≥ T³_cos, cos ≤ T²_cos, sin ≥ T³_sin, sin ≤ T²_sin.
    let bad = samples(SAMPLES)
        .find(|&x| !(cos_tail(3, x) > 0.0 && cos_tail(2, x) < 0.0 && sin_tail(3, x) > 0.0 && sin_tail(2, x) < 0.0));
    Step {
        name: "taylor-bounds",
        pass: bad.is_none(),
        detail: match bad {
            None => format!("{SAMPLES} samples"),
            Some(x) => format!("violated at x = {x}"),
        },
    }
}

fn dominance_step(k: &RationalPolynomial, g: &GEvaluator) -> Step {
    let mut worst = f64::INFINITY;
    let mut at = 0.0;
    for x in samples(SAMPLES) {
        let (kx, gx) = (k.eval_f64(x), g.eval(x));
        let margin = (kx - gx) / gx.abs();
        if margin < worst {
            worst = margin;
            at = x;
        }
    }
    Step { name: "g-below-k", pass: worst > 0.0, detail: format!("min (k - G)/|G| = {worst:.4} at x = {at:.4}") }
}

fn bridge_step(g: &GEvaluator) -> Step {
    let mut worst = 0.0f64;
    let mut mismatch = None;
    for x in samples(BRIDGE_SAMPLES) {
        let a = SpheroidParam::new(x.cos()).expect("cos maps (0, pi/2) into (0, 1)");
        let f = gap_function(a);
        let gx = g.eval(x);
        if f.signum() != gx.signum() {
            mismatch.get_or_insert(x);
        }
        let direct = f * x.sin().powi(3) * x.cos();
        worst = worst.max((direct - gx).abs() / gx.abs());
    }
    Step {
        name: "bridge",
        pass: mismatch.is_none() && worst < 1e-6,
        detail: match mismatch {
            None => format!("sign F(cos x) = sign G on {BRIDGE_SAMPLES} samples, max rel diff {worst:.1e}"),
            Some(x) => format!("sign mismatch at x = {x}"),
        },
    }
}

fn pi_step() -> (bool, Step) {
    let hi = BigRational::new(BigInt::from(PI_UPPER.0), BigInt::from(PI_UPPER.1));
    let bound = &hi * &hi / integer(4);
    let pass = hi.to_f64().is_some_and(|h| h > std::f64::consts::PI) && bound < integer(3);
    (
        pass,
        Step {
            name: "pi-containment",
            pass,
            detail: format!("(pi/2)^2 < {:.10} < 3", bound.to_f64().unwrap_or(f64::NAN)),
        },
    )
}

/// Runs the full argument from the Taylor polynomials onward.
pub fn certify_gap_negativity() -> Certificate {
    let k = bound_polynomial_k();
    let extracted = extract_q(&k);
    let q = match &extracted {
        Ok(q) => q.clone(),
        Err(_) => RationalPolynomial::new(k.coefficients().iter().skip(9).map(|c| c * integer(K_SCALE)).collect()),
    };
    build(k, q)
}

/// Same argument with `q` replaced, for checking that tampering is caught.
pub fn certify_with_q(q: RationalPolynomial) -> Certificate {
    build(bound_polynomial_k(), q)
}

fn build(k: RationalPolynomial, q: RationalPolynomial) -> Certificate {
    let g = GEvaluator::new();
    let mut steps = vec![taylor_bounds_step(), dominance_step(&k, &g), bridge_step(&g)];

    steps.push(Step {
        name: "k-degree",
        pass: k.degree() == Some(27),
        detail: format!("deg k = {}", k.degree().map_or("-".into(), |d| d.to_string())),
    });

    let rebuilt = &RationalPolynomial::monomial(BigRational::new(1.into(), K_SCALE.into()), 9) * &q;
    steps.push(Step { name: "q-extraction", pass: rebuilt == k, detail: format!("k = x^9 q / {K_SCALE}") });

    let matched = check_printed_q(&q);
    steps.push(Step {
        name: "q-coefficients",
        pass: matched.is_ok(),
        detail: match &matched {
            Ok(()) => "all 19 coefficients equal the printed values".into(),
            Err(e) => e.to_string(),
        },
    });

    let p = substitute_even(&q);
    steps.push(Step {
        name: "p-substitution",
        pass: p.is_ok(),
        detail: match &p {
            Ok(p) => format!("p(x^2) = q(x), p = {p}"),
            Err(e) => e.to_string(),
        },
    });
    let p = p.ok();

    let p_at_zero = p.as_ref().map(|p| p.eval(&BigRational::zero()));
    steps.push(Step {
        name: "p-at-zero",
        pass: p_at_zero.as_ref().is_some_and(|v| *v < BigRational::zero()),
        detail: p_at_zero.as_ref().map_or("no p".into(), |v| format!("p(0) = {v}")),
    });

    let chain = p.as_ref().map(SturmChain::new);
    let root_count = match (&chain, &p_at_zero) {
        (Some(Ok(c)), Some(v)) if !v.is_zero() => c.count_roots(&integer(0), &integer(3)).ok(),
        _ => None,
    };
    steps.push(Step {
        name: "sturm-roots",
        pass: root_count == Some(0),
        detail: match (&chain, root_count) {
            (Some(Ok(c)), Some(n)) => format!("{n} roots of p in [0, 3], chain length {}", c.len()),
            _ => "chain not evaluated".into(),
        },
    });

    let (pi_bound, pi) = pi_step();
    steps.push(pi);

    Certificate { k, q, p, coefficients_match: matched.is_ok(), p_at_zero, root_count, pi_bound, steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_upper_bound_holds() {
        let (pass, step) = pi_step();
        assert!(pass, "{}", step.detail);
    }

    #[test]
    fn report_lists_every_step() {
        let c = certify_gap_negativity();
        let report = c.report();
        assert_eq!(report.lines().count(), c.steps.len() + 1);
        assert!(report.ends_with("VERDICT: PASS\n"), "{report}");
    }
}
