use std::collections::BTreeMap;

use serde::Serialize;

use super::frame::{slots, LocalFrame};
use crate::curve::{Curve, SectionPiece};
use crate::error::{Error, Result};
use crate::exact::{Polynomial, PowerSeries, Rational};
use crate::gaussian::{GradedPiece, WedgeVector};

/// `Q = Σ c_rm γ_r ⊗ γ_m` over the canonical basis, with `c` symmetric.
///
/// The symmetric product is normalized as `a ⊙ b = (a ⊗ b + b ⊗ a) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalTensor {
    genus: usize,
    /// Nonzero entries `(r, m) -> c_rm`, both orders stored.
    entries: BTreeMap<(usize, usize), Rational>,
}

impl CanonicalTensor {
    pub fn zero(genus: usize) -> Self {
        CanonicalTensor {
            genus,
            entries: BTreeMap::new(),
        }
    }

    fn add_entry(&mut self, r: usize, m: usize, v: &Rational) {
        let slot = self.entries.entry((r, m)).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, m));
        }
    }

    /// Adds `coeff * (γ_a ⊙ γ_b)`.
    pub fn add_symmetric(&mut self, a: usize, b: usize, coeff: &Rational) {
        if a == b {
            self.add_entry(a, a, coeff);
        } else {
            let half = coeff * &Rational::new(1, 2);
            self.add_entry(a, b, &half);
            self.add_entry(b, a, &half);
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn get(&self, r: usize, m: usize) -> Rational {
        self.entries.get(&(r, m)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(r, m), v)| self.get(m, r) == *v)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.genus]; self.genus];
        for (&(r, m), v) in &self.entries {
            out[r][m] = v.clone();
        }
        out
    }

    /// `Σ c_rm g_r(z) g_m(z)` on the frame.
    pub fn local_product(&self, frame: &LocalFrame) -> PowerSeries {
        let g = frame.canonical();
        let mut acc = PowerSeries::zero(frame.truncation());
        for (&(r, m), v) in &self.entries {
            acc = &acc + &(&g[r] * &g[m]).scale(v);
        }
        acc
    }

    /// `Σ c_rm γ_r γ_m` as exact germs, one polynomial per power of `y^-1`
    /// (the forms `x^a / y` and `x^b G / y^2` have polynomial numerators).
    pub fn global_product(&self, c: &Curve) -> BTreeMap<u32, Polynomial> {
        let basis = c.basis_forms(SectionPiece::K);
        let forms = basis.forms();
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (&(r, m), v) in &self.entries {
            let prod = forms[r].mul(&forms[m]);
            let num = prod.value().numerator().scale(v);
            let slot = by_power.entry(prod.y_exponent()).or_insert_with(Polynomial::zero);
            *slot = &*slot + &num;
        }
        by_power.retain(|_, p| !p.is_zero());
        by_power
    }

    /// Membership in the quadrics through the canonical curve, checked both exactly
    /// and on the frame.
    pub fn check_membership(&self, c: &Curve, frame: Option<&LocalFrame>) -> Result<()> {
        if !self.is_symmetric() {
            return Err(Error::Internal("canonical tensor is not symmetric".into()));
        }
        if let Some((e, _)) = self.global_product(c).into_iter().next() {
            return Err(Error::Internal(format!(
                "tensor is not a quadric through the canonical curve (y^-{e} part survives)"
            )));
        }
        if let Some(f) = frame {
            if !self.local_product(f).is_zero() {
                return Err(Error::Internal("tensor product does not vanish locally".into()));
            }
        }
        Ok(())
    }
}

/// The quadric attached to a wedge vector:
/// `Q_ij = sα_i ⊙ tα_j - sα_j ⊙ tα_i`, `Q'_ij` the same on `β`, and
/// `Q''_ij = sα_i ⊙ tβ_j - tα_i ⊙ sβ_j`.
///
/// The result is verified to lie in `I_2` exactly, and also on `frame` when given.
pub fn canonical_tensor(c: &Curve, v: &WedgeVector, frame: Option<&LocalFrame>) -> Result<CanonicalTensor> {
    v.validate(c)?;
    let n1 = c.n1();
    let mut q = CanonicalTensor::zero(c.genus());
    let minus = |a: &Rational| -a;
    for (&(i, j), a) in v.iter() {
        match v.piece() {
            GradedPiece::LL => {
                q.add_symmetric(slots::s_alpha(i), slots::t_alpha(j), a);
                q.add_symmetric(slots::s_alpha(j), slots::t_alpha(i), &minus(a));
            }
            GradedPiece::MM => {
                q.add_symmetric(slots::s_beta(n1, i), slots::t_beta(n1, j), a);
                q.add_symmetric(slots::s_beta(n1, j), slots::t_beta(n1, i), &minus(a));
            }
            GradedPiece::LM => {
                q.add_symmetric(slots::s_alpha(i), slots::t_beta(n1, j), a);
                q.add_symmetric(slots::t_alpha(i), slots::s_beta(n1, j), &minus(a));
            }
        }
    }
    q.check_membership(c, frame)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;
    use crate::gaussian::mu2_kernel;
    use crate::schiffer::frame::default_truncation;

    fn curve(r1: usize, r2: usize) -> Curve {
        let roots = (0..(r1 + r2) as i64).map(|t| Rational::from(if t % 2 == 0 { t } else { -t })).collect();
        let mut e = vec![1; r1];
        e.extend(vec![2; r2]);
        build_curve(roots, e).unwrap()
    }

    #[test]
    fn mixed_basis_quadric_pattern() {
        let c = curve(12, 0);
        let v = WedgeVector::basis(&c, GradedPiece::LM, 1, 1).unwrap();
        let q = canonical_tensor(&c, &v, None).unwrap();
        assert_eq!(q.nonzero_count(), 4);
        let half = Rational::new(1, 2);
        let n1 = c.n1();
        assert_eq!(q.get(1, n1 + 1), half);
        assert_eq!(q.get(n1 + 1, 1), half);
        assert_eq!(q.get(0, n1 + 2), -&half);
        assert_eq!(q.get(n1 + 2, 0), -&half);
    }

    #[test]
    fn every_basis_quadric_is_in_i2() {
        let c = curve(6, 6);
        let f = LocalFrame::new(&c, default_truncation(&c)).unwrap();
        for piece in GradedPiece::ALL {
            for (i, j) in piece.pairs(&c) {
                let v = WedgeVector::basis(&c, piece, i, j).unwrap();
                canonical_tensor(&c, &v, Some(&f)).unwrap();
            }
        }
    }

    #[test]
    fn kernel_vectors_are_in_i2() {
        let c = curve(12, 0);
        let f = LocalFrame::new(&c, default_truncation(&c)).unwrap();
        for v in mu2_kernel(&c).unwrap().vectors(&c) {
            let q = canonical_tensor(&c, &v, Some(&f)).unwrap();
            assert!(q.is_symmetric());
        }
    }

    #[test]
    fn non_quadric_is_caught() {
        let c = curve(12, 0);
        let mut q = CanonicalTensor::zero(c.genus());
        q.add_symmetric(0, 1, &Rational::one());
        assert!(matches!(q.check_membership(&c, None), Err(Error::Internal(_))));
    }
}
