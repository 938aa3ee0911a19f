use num_rational::BigRational;

use super::{RationalPolynomial, SturmError};

/// `p₀ = p`, `p₁ = p'`, `p_{i+1} = -rem(p_{i-1}, p_i)` until the remainder
/// vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmChain {
    elements: Vec<RationalPolynomial>,
    /// The elements divided by the last one. Agrees in sign changes with the
    /// plain chain away from multiple roots and stays valid at them.
    reduced: Vec<RationalPolynomial>,
}

impl SturmChain {
    pub fn new(p: &RationalPolynomial) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let mut elements = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            elements.push(next);
            let n = elements.len();
            let (_, r) = elements[n - 2].div_rem(&elements[n - 1])?;
            next = -&r;
        }
        let last = elements.last().expect("nonempty").clone();
        let reduced = if last.degree() == Some(0) {
            elements.clone()
        } else {
            elements.iter().map(|e| e.div_rem(&last).map(|(q, _)| q)).collect::<Result<_, _>>()?
        };
        Ok(SturmChain { elements, reduced })
    }

    pub fn elements(&self) -> &[RationalPolynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for e in &self.reduced {
            let s = e.sign_at(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> Result<usize, SturmError> {
        if lo >= hi {
            return Err(SturmError::EmptyInterval);
        }
        if self.elements[0].sign_at(lo) == 0 {
            return Err(SturmError::RootAtLowerEnd);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`. The lower end must not
/// be a root; deflate first if it is.
pub fn sturm_count_roots(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational) -> Result<usize, SturmError> {
    SturmChain::new(p)?.count_roots(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::super::poly::{integer, rational};
    use super::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c)
    }

    #[test]
    fn unit_roots() {
        let p = poly(&[-1, 0, 1]);
        assert_eq!(sturm_count_roots(&p, &integer(0), &integer(3)), Ok(1));
        assert_eq!(sturm_count_roots(&p, &integer(-2), &integer(2)), Ok(2));
        // Upper end included.
        assert_eq!(sturm_count_roots(&p, &integer(0), &integer(1)), Ok(1));
        assert_eq!(sturm_count_roots(&p, &integer(-1), &integer(1)), Err(SturmError::RootAtLowerEnd));
    }

    #[test]
    fn multiple_roots_counted_once() {
        // (x - 1)² (x + 2)³ (x - 3)
        let p = &(&poly(&[-1, 1]).pow(2) * &poly(&[2, 1]).pow(3)) * &poly(&[-3, 1]);
        assert_eq!(sturm_count_roots(&p, &integer(-5), &integer(5)), Ok(3));
        assert_eq!(sturm_count_roots(&p, &rational(1, 2), &integer(1)), Ok(1));
        assert_eq!(sturm_count_roots(&p, &rational(-5, 2), &rational(5, 2)), Ok(2));
    }

    #[test]
    fn degrees_strictly_decrease() {
        let p = poly(&[3, -7, 0, 2, 5, -1, 1]);
        let chain = SturmChain::new(&p).unwrap();
        let degs: Vec<usize> = chain.elements().iter().map(|e| e.degree().unwrap()).collect();
        assert!(degs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(SturmChain::new(&poly(&[])), Err(SturmError::ZeroPolynomial));
        let p = poly(&[1, 1]);
        assert_eq!(sturm_count_roots(&p, &integer(2), &integer(2)), Err(SturmError::EmptyInterval));
        // Constants have no roots.
        assert_eq!(sturm_count_roots(&poly(&[4]), &integer(-1), &integer(1)), Ok(0));
    }
}
