use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Curve, TwistedFunction};
use crate::exact::{Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SectionPiece {
    /// `x^i / y`, `i = 1..n1`
    W1,
    /// `x^j G / y^2`, `j = 1..n2`
    W2,
    /// Canonical forms: `x^a / y`, `a = 0..n1`, then `x^b G / y^2`, `b = 0..n2`.
    K,
}

impl fmt::Display for SectionPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionPiece::W1 => "W1",
            SectionPiece::W2 => "W2",
            SectionPiece::K => "K",
        })
    }
}

/// Ordered basis forms, each stored as the coefficient of `dx`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionBasis {
    piece: SectionPiece,
    forms: Vec<TwistedFunction>,
}

impl SectionBasis {
    pub(super) fn build(c: &Curve, piece: SectionPiece) -> SectionBasis {
        let simple = |a: usize| TwistedFunction::from_poly(Polynomial::monomial(Rational::one(), a), 1);
        let double = |b: usize| {
            TwistedFunction::from_poly(&Polynomial::monomial(Rational::one(), b) * c.g_factor(), 2)
        };
        let forms = match piece {
            SectionPiece::W1 => (1..=c.n1()).map(simple).collect(),
            SectionPiece::W2 => (1..=c.n2()).map(double).collect(),
            SectionPiece::K => (0..=c.n1()).map(simple).chain((0..=c.n2()).map(double)).collect(),
        };
        SectionBasis { piece, forms }
    }

    pub fn piece(&self) -> SectionPiece {
        self.piece
    }

    pub fn forms(&self) -> &[TwistedFunction] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}
