use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::mat2::Mat2;
use crate::numtheory::gcd3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("coefficient `{0}` must be nonzero")]
    ZeroCoefficient(&'static str),
    #[error("exponent `{0}` must be at least 1")]
    ZeroExponent(&'static str),
    #[error("gcd(a, b, c) = {0}, expected 1")]
    NotCoprime(BigInt),
    #[error("lambda^n = {expected} does not match c = {c}")]
    LambdaMismatch { expected: BigInt, c: BigInt },
}

/// The equation `a·X^m + b·Y^n = c·I`.
///
/// `a`, `b` are nonzero and `gcd(a, b, c) = 1`. `c = 0` is accepted (it
/// only routes to the brute-force oracle). `lambda` marks the Fermat shape
/// `X^n + Y^n = λ^n I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub m: u32,
    pub n: u32,
    pub lambda: Option<BigInt>,
}

impl EquationSpec {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        m: u32,
        n: u32,
    ) -> Result<Self, SpecError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() {
            return Err(SpecError::ZeroCoefficient("a"));
        }
        if b.is_zero() {
            return Err(SpecError::ZeroCoefficient("b"));
        }
        if m == 0 {
            return Err(SpecError::ZeroExponent("m"));
        }
        if n == 0 {
            return Err(SpecError::ZeroExponent("n"));
        }
        let g = gcd3(&a, &b, &c);
        if !g.is_one() {
            return Err(SpecError::NotCoprime(g));
        }
        Ok(EquationSpec {
            a,
            b,
            c,
            m,
            n,
            lambda: None,
        })
    }

    /// `X^n + Y^n = λ^n I`.
    pub fn fermat(lambda: impl Into<BigInt>, n: u32) -> Result<Self, SpecError> {
        let lambda = lambda.into();
        if lambda.is_zero() {
            return Err(SpecError::ZeroCoefficient("lambda"));
        }
        let c = Pow::pow(&lambda, n);
        EquationSpec::new(1, 1, c, n, n)?.with_lambda(lambda)
    }

    pub fn with_lambda(mut self, lambda: BigInt) -> Result<Self, SpecError> {
        let expected = Pow::pow(&lambda, self.n);
        if expected != self.c {
            return Err(SpecError::LambdaMismatch {
                expected,
                c: self.c,
            });
        }
        self.lambda = Some(lambda);
        Ok(self)
    }

    /// `a·X^m + b·Y^n`.
    pub fn lhs(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        &x.pow_closed(self.m).scale(&self.a) + &y.pow_closed(self.n).scale(&self.b)
    }

    pub fn holds(&self, x: &Mat2, y: &Mat2) -> bool {
        self.lhs(x, y) == Mat2::scalar(self.c.clone())
    }

    pub fn is_quadratic(&self) -> bool {
        self.m == 2 && self.n == 2
    }

    /// `a = b = 1`, `m = n` and `λ` given.
    pub fn is_fermat_shape(&self) -> bool {
        self.lambda.is_some() && self.a.is_one() && self.b.is_one() && self.m == self.n
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·X^{} + {}·Y^{} = {}·I",
            self.a, self.m, self.b, self.n, self.c
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(EquationSpec::new(1, -3, -1, 2, 2).is_ok());
        assert_eq!(
            EquationSpec::new(0, 1, 1, 2, 2),
            Err(SpecError::ZeroCoefficient("a"))
        );
        assert_eq!(
            EquationSpec::new(2, 4, 6, 2, 2),
            Err(SpecError::NotCoprime(BigInt::from(2)))
        );
        assert_eq!(
            EquationSpec::new(1, 1, 1, 0, 2),
            Err(SpecError::ZeroExponent("m"))
        );
        // c = 0 is allowed when gcd(a, b) = 1
        assert!(EquationSpec::new(1, 1, 0, 2, 2).is_ok());
        let f = EquationSpec::fermat(2, 6).unwrap();
        assert_eq!(f.c, BigInt::from(64));
        assert!(f.is_fermat_shape());
        assert!(EquationSpec::new(1, 1, 65, 6, 6)
            .unwrap()
            .with_lambda(BigInt::from(2))
            .is_err());
    }

    #[test]
    fn holds_direct() {
        let s = EquationSpec::new(1, -3, -1, 2, 2).unwrap();
        assert!(s.holds(&Mat2::from_array([1, 2, 2, 5]), &Mat2::from_array([1, 1, 1, 3])));
        assert!(!s.holds(&Mat2::zero(), &Mat2::zero()));
    }
}
