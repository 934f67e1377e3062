use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalFunction};

/// The germ `R(x) * y^(-e)` on `y^3 = h(x)`.
///
/// Exponents are never reduced implicitly; use [`TwistedFunction::reduce_exponent`]
/// to trade `y^-3` for `1/h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwistedFunction {
    value: RationalFunction,
    y_exponent: u32,
}

impl TwistedFunction {
    pub fn new(value: RationalFunction, y_exponent: u32) -> Self {
        TwistedFunction { value, y_exponent }
    }

    pub fn from_poly(p: Polynomial, y_exponent: u32) -> Self {
        TwistedFunction::new(RationalFunction::from_poly(p), y_exponent)
    }

    pub fn zero(y_exponent: u32) -> Self {
        TwistedFunction::new(RationalFunction::zero(), y_exponent)
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn y_exponent(&self) -> u32 {
        self.y_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `(R, e) -> (R' - e R h' / (3h), e)`.
    pub fn derivative(&self, h: &Polynomial) -> TwistedFunction {
        let mut d = self.value.derivative();
        if self.y_exponent != 0 && !self.value.is_zero() {
            let log_term = RationalFunction::new(
                h.derivative().scale(&Rational::new(self.y_exponent as i64, 3)),
                h.clone(),
            );
            d = &d - &(&self.value * &log_term);
        }
        TwistedFunction::new(d, self.y_exponent)
    }

    pub fn scale(&self, c: &Rational) -> TwistedFunction {
        TwistedFunction::new(self.value.scale(c), self.y_exponent)
    }

    pub fn mul(&self, other: &TwistedFunction) -> TwistedFunction {
        TwistedFunction::new(&self.value * &other.value, self.y_exponent + other.y_exponent)
    }

    /// Sum of two germs carrying the same power of `y`.
    pub fn add(&self, other: &TwistedFunction) -> Result<TwistedFunction> {
        if self.y_exponent != other.y_exponent {
            return Err(Error::InvalidArgument(format!(
                "cannot add germs with y-exponents {} and {}",
                self.y_exponent, other.y_exponent
            )));
        }
        Ok(TwistedFunction::new(&self.value + &other.value, self.y_exponent))
    }

    /// Bring the exponent below 3 by dividing the value by `h` once per `y^-3`.
    pub fn reduce_exponent(&self, h: &Polynomial) -> TwistedFunction {
        let q = self.y_exponent / 3;
        if q == 0 {
            return self.clone();
        }
        let value = RationalFunction::new(self.value.numerator().clone(), self.value.denominator() * &h.pow(q));
        TwistedFunction::new(value, self.y_exponent % 3)
    }
}

impl fmt::Display for TwistedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * y^-{}", self.value, self.y_exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn constants_differentiate_to_zero() {
        let one = TwistedFunction::from_poly(Polynomial::one(), 0);
        assert!(one.derivative(&p(&[0, 1])).is_zero());
    }

    #[test]
    fn inverse_cube_of_y() {
        let h = p(&[0, 1]);
        let f = TwistedFunction::from_poly(Polynomial::one(), 3);
        let d = f.derivative(&h);
        assert_eq!(d.y_exponent(), 3);
        assert_eq!(d.value(), &RationalFunction::new(p(&[-1]), p(&[0, 1])));
        // as a plain function: -1/x * 1/x = d/dx (1/x)
        let plain = d.reduce_exponent(&h);
        assert_eq!(plain.y_exponent(), 0);
        assert_eq!(plain.value(), &RationalFunction::new(p(&[-1]), p(&[0, 0, 1])));
    }

    #[test]
    fn x_over_cube_root_of_x3_minus_x() {
        // d/dx x (x^3-x)^(-1/3), differentiated by hand: (1 - (3x^2-1)/(3(x^2-1))) y^-1
        let h = p(&[0, -1, 0, 1]);
        let f = TwistedFunction::from_poly(p(&[0, 1]), 1);
        let d = f.derivative(&h);
        assert_eq!(d.y_exponent(), 1);
        assert_eq!(d.value(), &RationalFunction::new(p(&[-2]), p(&[-3, 0, 3])));
    }

    #[test]
    fn product_adds_exponents() {
        let a = TwistedFunction::from_poly(p(&[1, 1]), 1);
        let b = TwistedFunction::from_poly(p(&[0, 2]), 2);
        let c = a.mul(&b);
        assert_eq!(c.y_exponent(), 3);
        assert_eq!(c.value().numerator(), &p(&[0, 2, 2]));
        assert!(a.add(&b).is_err());
    }
}
