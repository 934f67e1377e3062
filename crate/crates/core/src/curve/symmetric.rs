use serde::Serialize;

use crate::exact::{Polynomial, Rational};

/// Signed coefficients with `h(x) = Σ_t σ_t x^(deg h - t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SymmetricCoefficients {
    sigma: Vec<Rational>,
}

impl SymmetricCoefficients {
    pub fn from_polynomial(h: &Polynomial) -> Self {
        let d = h.degree().unwrap_or(0);
        SymmetricCoefficients {
            sigma: (0..=d).map(|t| h.coeff(d - t)).collect(),
        }
    }

    /// `σ_t`, or zero past the degree.
    pub fn get(&self, t: usize) -> Rational {
        self.sigma.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.sigma
    }

    pub fn degree(&self) -> usize {
        self.sigma.len() - 1
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let d = self.degree();
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (t, s) in self.sigma.iter().enumerate() {
            coeffs[d - t] = s.clone();
        }
        Polynomial::new(coeffs)
    }
}
