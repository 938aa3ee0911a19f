//! Exact polynomial arithmetic, Sturm root counting and the certificate that
//! the spheroid gap function is negative on `(0, 1)`.

mod appendix;
mod certificate;
mod chain;
mod poly;

use thiserror::Error;

pub use appendix::{
    bound_polynomial_k, check_printed_q, cos_tail, extract_q, sin_tail, substitute_even, taylor_cos, taylor_sin,
    GEvaluator, K_SCALE, PRINTED_COEFFICIENTS,
};
pub use certificate::{certify_gap_negativity, certify_with_q, Certificate, Step, PI_UPPER};
pub use chain::{sturm_count_roots, SturmChain};
pub use poly::{integer, rational, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval")]
    EmptyInterval,
    #[error("lower end of the interval is a root")]
    RootAtLowerEnd,
    #[error("odd-degree term at x^{degree}")]
    OddTermPresent { degree: usize },
    #[error("nonzero coefficient at x^{degree} below x^9")]
    NotDivisible { degree: usize },
    #[error("coefficient of x^{degree} is {found}, expected {expected}")]
    CoefficientMismatch { degree: usize, expected: String, found: String },
}
