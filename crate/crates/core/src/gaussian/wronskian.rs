use crate::curve::Curve;
use crate::error::Result;
use crate::exact::{ExactMatrix, Polynomial, Rational, RationalFunction};

use super::{GradedPiece, WedgeVector};

/// Which forms to use for the `W2` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormVariant {
    /// `x^j G / y^2`, the actual sections.
    #[default]
    WithFactor,
    /// `x^j / y^2`, with the common factor `G` removed.
    Stripped,
}

/// Numerators `P_k` with `d^k/dx^k (P y^-e) = P_k / h^k * y^-e`, for `k = 0..=order`.
pub fn derivative_numerators(h: &Polynomial, p: &Polynomial, e: u32, order: usize) -> Vec<Polynomial> {
    let hp = h.derivative();
    let mut out = Vec::with_capacity(order + 1);
    out.push(p.clone());
    for k in 0..order {
        let pk = &out[k];
        let c = Rational::new(3 * k as i64 + e as i64, 3);
        let next = &(&pk.derivative() * h) - &(pk * &hp).scale(&c);
        out.push(next);
    }
    out
}

/// Derivative towers of the two factors of a piece, sharing the denominators `h^k`.
#[derive(Debug, Clone)]
pub struct PieceForms {
    piece: GradedPiece,
    left: Vec<Vec<Polynomial>>,
    right: Vec<Vec<Polynomial>>,
    h: Polynomial,
}

impl PieceForms {
    pub fn new(c: &Curve, piece: GradedPiece, variant: FormVariant, order: usize) -> Self {
        let g = match variant {
            FormVariant::WithFactor => c.g_factor().clone(),
            FormVariant::Stripped => Polynomial::one(),
        };
        let tower = |a: usize, e: u32, factor: &Polynomial| {
            derivative_numerators(c.h(), &(&Polynomial::monomial(Rational::one(), a) * factor), e, order)
        };
        let w1: Vec<_> = (1..=c.n1()).map(|i| tower(i, 1, &Polynomial::one())).collect();
        let w2: Vec<_> = (1..=c.n2()).map(|j| tower(j, 2, &g)).collect();
        let (left, right) = match piece {
            GradedPiece::LL => (w1.clone(), w1),
            GradedPiece::MM => (w2.clone(), w2),
            GradedPiece::LM => (w1, w2),
        };
        PieceForms {
            piece,
            left,
            right,
            h: c.h().clone(),
        }
    }

    pub fn piece(&self) -> GradedPiece {
        self.piece
    }

    /// Numerator of `f_i^(r) g_j^(s) - f_i^(s) g_j^(r)` over `h^(r+s)`.
    pub fn pair_numerator(&self, i: usize, j: usize, r: usize, s: usize) -> Polynomial {
        let (f, g) = (&self.left[i - 1], &self.right[j - 1]);
        &(&f[r] * &g[s]) - &(&f[s] * &g[r])
    }

    /// Numerator of the Wronskian of a combination over all `pairs`.
    pub fn combination_numerator<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a (usize, usize), &'a Rational)>,
        r: usize,
        s: usize,
    ) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (&(i, j), a) in terms {
            if !a.is_zero() {
                acc = &acc + &self.pair_numerator(i, j, r, s).scale(a);
            }
        }
        acc
    }

    /// Columns are the coefficient vectors of each combination's numerator;
    /// `vectors` are dense over `pairs`.
    pub fn images(&self, pairs: &[(usize, usize)], vectors: &[Vec<Rational>], r: usize, s: usize) -> ExactMatrix {
        let used: Vec<Option<Polynomial>> = (0..pairs.len())
            .map(|p| {
                vectors
                    .iter()
                    .any(|v| !v[p].is_zero())
                    .then(|| self.pair_numerator(pairs[p].0, pairs[p].1, r, s))
            })
            .collect();
        let rows = used.iter().flatten().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
        let mut m = ExactMatrix::zeros(rows, vectors.len());
        for (col, v) in vectors.iter().enumerate() {
            let mut acc = vec![Rational::zero(); rows];
            for (a, poly) in v.iter().zip(&used) {
                let Some(poly) = poly else { continue };
                if a.is_zero() {
                    continue;
                }
                for (slot, c) in acc.iter_mut().zip(poly.coeffs()) {
                    if !c.is_zero() {
                        *slot += &(a * c);
                    }
                }
            }
            for (row, c) in acc.into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        m
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }
}

/// `Σ a_ij (f_i^(r) f_j^(s) - f_i^(s) f_j^(r))` with the piece's `y`-power factored out.
pub fn wronskian(c: &Curve, v: &WedgeVector, split: (usize, usize)) -> Result<RationalFunction> {
    wronskian_with(c, v, split, FormVariant::WithFactor)
}

pub fn wronskian_with(
    c: &Curve,
    v: &WedgeVector,
    split: (usize, usize),
    variant: FormVariant,
) -> Result<RationalFunction> {
    v.validate(c)?;
    let (r, s) = split;
    if r == s || v.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let forms = PieceForms::new(c, v.piece(), variant, r.max(s));
    let n = forms.combination_numerator(v.iter(), r, s);
    Ok(RationalFunction::new(n, c.h().pow((r + s) as u32)))
}
