//! Dense univariate polynomials over the rationals, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::convolve;
use super::Rational;

/// Invariant: `coeffs` never ends in a zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    /// `x - root`
    pub fn linear_factor(root: &Rational) -> Self {
        Polynomial::new(vec![-root, Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if nd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Integer-coefficient primitive part with positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = Rational::denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Runs a primitive remainder sequence over the integers so intermediate
    /// coefficients stay content-free.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive_integer();
        let mut b = other.primitive_integer();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        Polynomial::new(a.into_iter().map(Rational::from).collect()).monic()
    }

    /// `∏ (x - root)^exponent`
    pub fn from_root_multiset<'a>(roots: impl IntoIterator<Item = (&'a Rational, u32)>) -> Self {
        roots.into_iter().fold(Polynomial::one(), |acc, (t, a)| {
            &acc * &Polynomial::linear_factor(t).pow(a)
        })
    }
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return Vec::new();
    }
    v.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b` (lc(b)^(deg a - deg b + 1) · a mod b).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn add_coeffs(a: &[Rational], b: &[Rational], negate_b: bool) -> Polynomial {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i);
        let y = b.get(i);
        out.push(match (x, y, negate_b) {
            (Some(x), Some(y), false) => x + y,
            (Some(x), Some(y), true) => x - y,
            (Some(x), None, _) => x.clone(),
            (None, Some(y), false) => y.clone(),
            (None, Some(y), true) => -y,
            (None, None, _) => unreachable!(),
        });
    }
    Polynomial::new(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        Polynomial::new(convolve(&self.coeffs, &rhs.coeffs, len))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(p(&[0, -1, 0, 1]).derivative(), p(&[-1, 0, 3]));
        assert!(p(&[5]).derivative().is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 2]).gcd(&p(&[3, 3])), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), Polynomial::one());
        assert!(Polynomial::zero().gcd(&Polynomial::zero()).is_zero());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let a = &Polynomial::from_root_multiset([(&Rational::new(1, 2), 2), (&Rational::from(3), 1)])
            * &p(&[7]);
        let b = Polynomial::from_root_multiset([(&Rational::new(1, 2), 1), (&Rational::from(-4), 1)]);
        assert_eq!(a.gcd(&b), Polynomial::linear_factor(&Rational::new(1, 2)));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, -2, 5, 1]);
        let b = p(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
    }

    #[test]
    fn from_roots_expands() {
        let zero = Rational::zero();
        let one = Rational::one();
        let h = Polynomial::from_root_multiset([(&zero, 1), (&one, 2)]);
        assert_eq!(h, p(&[0, 1, -2, 1]));
    }
}
