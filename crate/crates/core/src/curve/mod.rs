//! Cyclic trigonal curves `y^3 = ∏ (x - t_i)^{a_i}` built from exact branch data.

mod basis;
mod bounds;
mod generator;
mod symmetric;
mod twisted;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational};

pub use basis::{SectionBasis, SectionPiece};
pub use bounds::{dimension_bounds, BoundsReport};
pub use generator::{generate_branch, GeneratorParams};
pub use symmetric::SymmetricCoefficients;
pub use twisted::TwistedFunction;

/// Branch points and their exponents, in canonical order: the origin first,
/// then the remaining exponent-1 roots, then the exponent-2 roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchData {
    roots: Vec<Rational>,
    exponents: Vec<u32>,
}

impl BranchData {
    pub fn new(roots: Vec<Rational>, exponents: Vec<u32>) -> Result<Self> {
        if let Some(e) = Self::violations(&roots, &exponents).into_iter().next() {
            return Err(e);
        }
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by_key(|&i| exponents[i]);
        let roots: Vec<Rational> = order.iter().map(|&i| roots[i].clone()).collect();
        let exponents: Vec<u32> = order.iter().map(|&i| exponents[i]).collect();
        if !roots[0].is_zero() {
            return Err(Error::NotNormalized(roots[0].clone()));
        }
        Ok(BranchData { roots, exponents })
    }

    /// Every violated invariant, in a fixed order. Empty means `new` succeeds.
    pub fn violations(roots: &[Rational], exponents: &[u32]) -> Vec<Error> {
        let mut out = Vec::new();
        if roots.is_empty() {
            out.push(Error::EmptyBranchData);
            return out;
        }
        if roots.len() != exponents.len() {
            out.push(Error::LengthMismatch {
                roots: roots.len(),
                exponents: exponents.len(),
            });
        }
        for &a in exponents {
            if a != 1 && a != 2 {
                out.push(Error::BadExponent(a));
            }
        }
        let mut seen = BTreeSet::new();
        for t in roots {
            if !seen.insert(t) {
                out.push(Error::DegenerateBranchDivisor(t.clone()));
            }
        }
        if !roots[0].is_zero() {
            out.push(Error::NotNormalized(roots[0].clone()));
        }
        // After the canonical sort the origin must still lead, so if any root
        // has exponent 1 the origin must be one of them.
        if roots[0].is_zero()
            && exponents.first() == Some(&2)
            && exponents.contains(&1)
        {
            let first_simple = exponents.iter().position(|&a| a == 1).unwrap();
            out.push(Error::NotNormalized(roots[first_simple].clone()));
        }
        let sum: u32 = exponents.iter().sum();
        if !sum.is_multiple_of(3) {
            out.push(Error::NotCyclicTrigonal(sum));
        }
        out
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    branch: BranchData,
    r1: usize,
    r2: usize,
    n1: usize,
    n2: usize,
    h: Polynomial,
    h_prime: Polynomial,
    g_factor: Polynomial,
}

impl Curve {
    pub fn new(branch: BranchData) -> Result<Self> {
        let r1 = branch.exponents.iter().filter(|&&a| a == 1).count();
        let r2 = branch.exponents.len() - r1;
        let n1 = (r1 as i64 + 2 * r2 as i64 - 6) / 3;
        let n2 = (2 * r1 as i64 + r2 as i64 - 6) / 3;
        if r1 + 2 * r2 < 6 || 2 * r1 + r2 < 6 {
            return Err(Error::GenusTooSmall { n1, n2 });
        }
        let h = Polynomial::from_root_multiset(branch.roots.iter().zip(branch.exponents.iter().copied()));
        let g_factor = Polynomial::from_root_multiset(
            branch
                .roots
                .iter()
                .zip(&branch.exponents)
                .filter(|(_, &a)| a == 2)
                .map(|(t, _)| (t, 1)),
        );
        let h_prime = h.derivative();
        Ok(Curve {
            branch,
            r1,
            r2,
            n1: n1 as usize,
            n2: n2 as usize,
            h,
            h_prime,
            g_factor,
        })
    }

    pub fn branch(&self) -> &BranchData {
        &self.branch
    }

    /// Number of branch points.
    pub fn r(&self) -> usize {
        self.r1 + self.r2
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn genus(&self) -> usize {
        self.r() - 2
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// `∏ (x - t_i)^{a_i}`
    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn h_prime(&self) -> &Polynomial {
        &self.h_prime
    }

    /// `∏_{a_i = 2} (x - t_i)`, the common factor of the `W2` forms (1 when `r2 = 0`).
    pub fn g_factor(&self) -> &Polynomial {
        &self.g_factor
    }

    /// The derivation `d/dx` acting on germs `R(x) y^{-e}`.
    pub fn trigonal_derivative(&self, f: &TwistedFunction) -> TwistedFunction {
        f.derivative(&self.h)
    }

    pub fn symmetric_coeffs(&self) -> SymmetricCoefficients {
        SymmetricCoefficients::from_polynomial(&self.h)
    }

    pub fn basis_forms(&self, piece: SectionPiece) -> SectionBasis {
        SectionBasis::build(self, piece)
    }

    pub fn summary(&self) -> CurveSummary {
        CurveSummary {
            roots: self.branch.roots.clone(),
            exponents: self.branch.exponents.clone(),
            r: self.r(),
            r1: self.r1,
            r2: self.r2,
            genus: self.genus(),
            n1: self.n1,
            n2: self.n2,
            h: self.h.clone(),
            g_factor: self.g_factor.clone(),
        }
    }
}

/// Convenience for `Curve::new(BranchData::new(..)?)`.
pub fn build_curve(roots: Vec<Rational>, exponents: Vec<u32>) -> Result<Curve> {
    Curve::new(BranchData::new(roots, exponents)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub roots: Vec<Rational>,
    pub exponents: Vec<u32>,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
    pub genus: usize,
    pub n1: usize,
    pub n2: usize,
    pub h: Polynomial,
    pub g_factor: Polynomial,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn six_simple_roots_give_genus_four() {
        let c = build_curve(roots(&[0, 1, -1, 2, -2, 3]), vec![1; 6]).unwrap();
        assert_eq!((c.r(), c.genus(), c.n1(), c.n2()), (6, 4, 0, 2));
        assert_eq!(c.h().degree(), Some(6));
        assert_eq!(c.g_factor(), &Polynomial::one());
    }

    #[test]
    fn eighteen_simple_roots() {
        let c = build_curve(roots(&(0..18).collect::<Vec<_>>()), vec![1; 18]).unwrap();
        assert_eq!((c.genus(), c.n1(), c.n2()), (16, 4, 10));
        assert_eq!(c.n1() + c.n2(), c.genus() - 2);
    }

    #[test]
    fn exponent_sum_must_be_divisible_by_three() {
        let e = build_curve(roots(&[0, 1, 2, 3]), vec![1, 1, 1, 2]).unwrap_err();
        assert_eq!(e, Error::NotCyclicTrigonal(5));
    }

    #[test]
    fn rejects_repeated_roots_and_unnormalized_origin() {
        assert!(matches!(
            build_curve(roots(&[0, 1, 1, 2, 3, 4]), vec![1; 6]),
            Err(Error::DegenerateBranchDivisor(_))
        ));
        assert!(matches!(
            build_curve(roots(&[5, 1, 2, 3, 4, 6]), vec![1; 6]),
            Err(Error::NotNormalized(_))
        ));
        assert_eq!(
            build_curve(roots(&[0, 1, 2]), vec![1; 3]),
            Err(Error::GenusTooSmall { n1: -1, n2: 0 })
        );
    }

    #[test]
    fn exponent_two_roots_move_last() {
        let c = build_curve(
            roots(&[0, 7, 1, 2, 3, 4, 5, 6, 8]),
            vec![1, 2, 1, 1, 1, 1, 2, 1, 2],
        )
        .unwrap();
        assert_eq!(c.branch().exponents(), &[1, 1, 1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(c.branch().roots()[6..], roots(&[7, 5, 8])[..]);
        assert_eq!((c.r1(), c.r2()), (6, 3));
        assert_eq!(c.h().degree(), Some(12));
        assert_eq!(c.g_factor().degree(), Some(3));
        assert_eq!(c.n1() + c.n2(), c.genus() - 2);
    }

    #[test]
    fn violations_are_all_listed() {
        let v = BranchData::violations(&roots(&[1, 1]), &[1, 3, 1]);
        assert!(v.contains(&Error::LengthMismatch { roots: 2, exponents: 3 }));
        assert!(v.contains(&Error::BadExponent(3)));
        assert!(v.contains(&Error::DegenerateBranchDivisor(Rational::one())));
        assert!(v.contains(&Error::NotNormalized(Rational::one())));
        assert!(v.contains(&Error::NotCyclicTrigonal(5)));
    }
}
