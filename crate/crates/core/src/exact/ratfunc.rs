//! Rational functions in one variable, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use super::{Polynomial, Rational};

/// `numerator / denominator` with a monic denominator coprime to the numerator.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Self {
        assert!(!denominator.is_zero(), "rational function with zero denominator");
        if numerator.is_zero() {
            return RationalFunction::zero();
        }
        let g = numerator.gcd(&denominator);
        let mut n = numerator.exact_div(&g).expect("gcd divides numerator");
        let mut d = denominator.exact_div(&g).expect("gcd divides denominator");
        let lc = d.leading().cloned().expect("nonzero denominator").recip();
        n = n.scale(&lc);
        d = d.scale(&lc);
        RationalFunction {
            numerator: n,
            denominator: d,
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            numerator: Polynomial::zero(),
            denominator: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RationalFunction::new(&self.numerator * p, self.denominator.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.numerator.derivative() * &self.denominator)
            - &(&self.numerator * &self.denominator.derivative());
        RationalFunction::new(n, &self.denominator * &self.denominator)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of the zero rational function");
        RationalFunction::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Evaluate where the denominator does not vanish.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(at);
        (!d.is_zero()).then(|| self.numerator.eval(at) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.denominator == rhs.denominator {
            return RationalFunction::new(&self.numerator + &rhs.numerator, self.denominator.clone());
        }
        RationalFunction::new(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "[{}] / [{}]", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
