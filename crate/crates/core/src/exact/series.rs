//! Truncated power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
//!
//! Binary operations on series of different truncation orders truncate to the
//! smaller order. Nothing ever silently extends past the stored order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::rational::convolve;
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PowerSeries {
    truncation: usize,
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads with zeros or drops terms so exactly `truncation + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<Rational>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, Rational::zero());
        PowerSeries { truncation, coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        PowerSeries::new(Vec::new(), truncation)
    }

    pub fn one(truncation: usize) -> Self {
        PowerSeries::constant(Rational::one(), truncation)
    }

    pub fn constant(c: Rational, truncation: usize) -> Self {
        PowerSeries::new(vec![c], truncation)
    }

    /// The local coordinate `z` itself.
    pub fn variable(truncation: usize) -> Self {
        PowerSeries::monomial(Rational::one(), 1, truncation)
    }

    pub fn monomial(c: Rational, degree: usize, truncation: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); truncation + 1];
        if degree <= truncation {
            coeffs[degree] = c;
        }
        PowerSeries { truncation, coeffs }
    }

    pub fn from_polynomial(p: &Polynomial, truncation: usize) -> Self {
        PowerSeries::new(p.coeffs().to_vec(), truncation)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    /// `f^{(h)}(0) = h! [z^h] f`; `None` past the truncation order.
    pub fn jet(&self, h: usize) -> Option<Rational> {
        self.coeffs.get(h).map(|c| c * Rational::factorial(h))
    }

    /// Index of the first nonzero coefficient, `None` if zero through the truncation.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let t = truncation.min(self.truncation);
        PowerSeries::new(self.coeffs[..=t].to_vec(), t)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Term-wise derivative; the truncation order drops by one.
    pub fn derivative(&self) -> Self {
        let t = self.truncation.saturating_sub(1);
        let coeffs = (1..=self.truncation)
            .map(|i| &self.coeffs[i] * Rational::from(i))
            .collect();
        PowerSeries::new(coeffs, t)
    }

    /// Divide by `z^k`. The first `k` coefficients must vanish; the
    /// truncation order drops by `k`.
    pub fn div_z_power(&self, k: usize) -> Result<Self> {
        if k > self.truncation {
            return Err(Error::IncreaseTruncation {
                needed: k,
                have: self.truncation,
            });
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "series not divisible by z^{k}"
            )));
        }
        Ok(PowerSeries {
            truncation: self.truncation - k,
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = PowerSeries::one(self.truncation);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Reciprocal of a series with nonzero constant term, by Newton iteration
    /// `y <- y (2 - s y)`.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let two = PowerSeries::constant(Rational::from(2), self.truncation);
        let mut y = PowerSeries::constant(c0.recip(), 0);
        let mut known = 1usize;
        while known <= self.truncation {
            known = (2 * known).min(self.truncation + 1);
            let t = known - 1;
            let y_t = PowerSeries::new(y.coeffs, t);
            let e = &self.truncate(t) * &y_t;
            y = &y_t * &(&two.truncate(t) - &e);
        }
        Ok(y)
    }

    /// `f(g(z))`; requires `g(0) = 0`. Truncation is the smaller of the two.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionContract);
        }
        let t = self.truncation.min(inner.truncation);
        let inner = inner.truncate(t);
        let mut acc = PowerSeries::zero(t);
        for c in self.coeffs[..=t].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `p(s(z))` for a polynomial `p`, no constraint on `s(0)`.
    pub fn eval_polynomial(p: &Polynomial, s: &PowerSeries) -> Self {
        let mut acc = PowerSeries::zero(s.truncation);
        for c in p.coeffs().iter().rev() {
            acc = &acc * s;
            acc.coeffs[0] += c;
        }
        acc
    }
}

fn zip_with(a: &PowerSeries, b: &PowerSeries, sub: bool) -> PowerSeries {
    let t = a.truncation.min(b.truncation);
    let coeffs = (0..=t)
        .map(|i| {
            if sub {
                &a.coeffs[i] - &b.coeffs[i]
            } else {
                &a.coeffs[i] + &b.coeffs[i]
            }
        })
        .collect();
    PowerSeries { truncation: t, coeffs }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, false)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, true)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let t = self.truncation.min(rhs.truncation);
        PowerSeries {
            truncation: t,
            coeffs: convolve(&self.coeffs[..=t], &rhs.coeffs[..=t], t + 1),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})z^{i}"))
            .collect();
        write!(f, "{} + O(z^{})", terms.join(" + "), self.truncation + 1)
    }
}

/// Solve `h(x(z)) = z^3` for `x(z)` with `x(0) = 0`, exactly through `z^N`.
///
/// Requires 0 to be a simple root of `h`. Newton iteration; the number of
/// correct coefficients doubles every step.
pub fn series_solve_branch(h: &Polynomial, truncation: usize) -> Result<PowerSeries> {
    let h0 = h.coeff(0);
    let h1 = h.coeff(1);
    if !h0.is_zero() || h1.is_zero() {
        return Err(Error::NotSimpleBranch);
    }
    let n = truncation;
    let dh = h.derivative();
    let target = |t: usize| PowerSeries::monomial(Rational::one(), 3, t);
    // z^3 / h'(0) is exact modulo z^6.
    let mut x = PowerSeries::monomial(h1.recip(), 3, n);
    let mut correct = 5usize;
    while correct < n {
        let t = (2 * correct + 1).min(n);
        let xt = x.truncate(t);
        let residual = &PowerSeries::eval_polynomial(h, &xt) - &target(t);
        let slope = PowerSeries::eval_polynomial(&dh, &xt).recip()?;
        let step = &residual * &slope;
        x = PowerSeries::new((&xt - &step).coeffs, n);
        correct = t;
    }
    let check = &PowerSeries::eval_polynomial(h, &x) - &target(n);
    if !check.is_zero() {
        return Err(Error::Internal("branch series failed to satisfy h(x) = z^3".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(c: &[i64], t: usize) -> PowerSeries {
        PowerSeries::new(c.iter().map(|&v| Rational::from(v)).collect(), t)
    }

    #[test]
    fn compose_binomial() {
        // u^2 with u = z + z^2, truncated at 3 -> z^2 + 2 z^3
        let f = ints(&[0, 0, 1], 3);
        let u = ints(&[0, 1, 1], 3);
        assert_eq!(f.compose(&u).unwrap(), ints(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn compose_rejects_constant_term() {
        let f = ints(&[1, 1], 4);
        assert_eq!(f.compose(&ints(&[1, 1], 4)), Err(Error::CompositionContract));
    }

    #[test]
    fn mixed_truncation_takes_minimum() {
        let a = ints(&[1, 1, 1, 1, 1], 4);
        let b = ints(&[1, 1], 2);
        assert_eq!((&a * &b).truncation(), 2);
        assert_eq!((&a + &b).truncation(), 2);
        assert_eq!(a.derivative().truncation(), 3);
    }

    #[test]
    fn recip_of_geometric() {
        let one_minus_z = ints(&[1, -1], 6);
        assert_eq!(one_minus_z.recip().unwrap(), ints(&[1, 1, 1, 1, 1, 1, 1], 6));
    }

    #[test]
    fn branch_of_identity_root() {
        let x = series_solve_branch(&Polynomial::x(), 9).unwrap();
        assert_eq!(x, PowerSeries::monomial(Rational::one(), 3, 9));
        let x = series_solve_branch(&Polynomial::from_ints(&[0, 2]), 9).unwrap();
        assert_eq!(x, PowerSeries::monomial(r(1, 2), 3, 9));
    }

    /// Fixed-point oracle: x <- x^3 - z^3 for h = x^3 - x.
    fn fixed_point_cubic(n: usize) -> PowerSeries {
        let mut x = PowerSeries::zero(n);
        for _ in 0..=n {
            x = &x.pow(3) - &PowerSeries::monomial(Rational::one(), 3, n);
        }
        x
    }

    #[test]
    fn branch_of_cubic_matches_fixed_point() {
        let h = Polynomial::from_ints(&[0, -1, 0, 1]);
        let x = series_solve_branch(&h, 15).unwrap();
        let oracle = fixed_point_cubic(15);
        assert_eq!(x, oracle);
        // frozen from the oracle
        let mut expect = vec![Rational::zero(); 16];
        expect[3] = r(-1, 1);
        expect[9] = r(-1, 1);
        expect[15] = r(-3, 1);
        assert_eq!(x, PowerSeries::new(expect, 15));
    }

    #[test]
    fn branch_rejects_non_simple() {
        assert_eq!(
            series_solve_branch(&Polynomial::from_ints(&[1, 1]), 9),
            Err(Error::NotSimpleBranch)
        );
        assert_eq!(
            series_solve_branch(&Polynomial::from_ints(&[0, 0, 1]), 9),
            Err(Error::NotSimpleBranch)
        );
    }
}
