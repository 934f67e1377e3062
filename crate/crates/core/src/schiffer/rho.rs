use serde::Serialize;

use super::frame::{jet, LocalFrame};
use super::tensor::CanonicalTensor;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Scan ceiling used when no other bound is requested.
pub const DEFAULT_ORDER_CEILING: usize = 12;

/// `Σ c_rm g_r^(h)(0) g_m^(l)(0)`.
pub fn derivative_sum(frame: &LocalFrame, q: &CanonicalTensor, h: usize, l: usize) -> Result<Rational> {
    let have = frame.truncation();
    if h.max(l) > have {
        return Err(Error::IncreaseTruncation {
            needed: h.max(l) + 3,
            have: frame.requested_truncation(),
        });
    }
    let g = frame.canonical();
    let mut acc = Rational::zero();
    for (&(r, m), c) in q.entries() {
        let a = jet(&g[r], h)?;
        if a.is_zero() {
            continue;
        }
        let b = jet(&g[m], l)?;
        if !b.is_zero() {
            acc += &(&(c * &a) * &b);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VanishingOrder {
    /// Largest `m` with every derivative sum zero for `h + l <= m`.
    pub order: usize,
    /// True when nothing nonzero was found up to the ceiling, so `order` is only a lower bound.
    pub capped: bool,
}

/// Scans `h + l = 0, 1, ..` up to `ceiling`.
pub fn vanishing_order(frame: &LocalFrame, q: &CanonicalTensor, ceiling: usize) -> Result<VanishingOrder> {
    for total in 0..=ceiling {
        for h in 0..=total {
            if !derivative_sum(frame, q, h, total - h)?.is_zero() {
                if total == 0 {
                    return Err(Error::Internal("tensor does not vanish at the expansion point".into()));
                }
                return Ok(VanishingOrder {
                    order: total - 1,
                    capped: false,
                });
            }
        }
    }
    Ok(VanishingOrder {
        order: ceiling,
        capped: true,
    })
}

/// `ρ(Q)(ξ^n ⊙ ξ^l) = q · 2πi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoValue {
    pub n: usize,
    pub l: usize,
    pub vanishing_order: usize,
    pub q: Rational,
}

/// Zero when `n + l <= m`; at `n + l = m + 1`,
/// `q = Σ_{k=0}^{n-1} D(m+1-k, k) (n - k) / (k! (m+1-k)!)`.
pub fn rho(frame: &LocalFrame, q: &CanonicalTensor, n: usize, l: usize) -> Result<RhoValue> {
    if n == 0 || l == 0 {
        return Err(Error::InvalidArgument("Schiffer indices start at 1".into()));
    }
    let m = vanishing_order(frame, q, n + l)?;
    if n + l <= m.order {
        return Ok(RhoValue {
            n,
            l,
            vanishing_order: m.order,
            q: Rational::zero(),
        });
    }
    let m = m.order;
    if n + l > m + 1 {
        return Err(Error::FormulaInapplicable { sum: n + l, order: m });
    }
    let mut acc = Rational::zero();
    for k in 0..n {
        let d = derivative_sum(frame, q, m + 1 - k, k)?;
        if d.is_zero() {
            continue;
        }
        let w = Rational::from((n - k) as i64) / (Rational::factorial(k) * Rational::factorial(m + 1 - k));
        acc += &(&d * &w);
    }
    Ok(RhoValue {
        n,
        l,
        vanishing_order: m,
        q: acc,
    })
}

/// `s'''(0) t(0) α_1'(0) β_1(0)`. Requires `n1, n2 >= 1`.
pub fn k2_reference_product(frame: &LocalFrame) -> Result<Rational> {
    let (alpha, beta) = (frame.alpha().first(), frame.beta().first());
    let (Some(a1), Some(b1)) = (alpha, beta) else {
        return Err(Error::InvalidArgument("needs n1 >= 1 and n2 >= 1".into()));
    };
    let s3 = jet(frame.s_series(), 3)?;
    let t0 = jet(&frame.t_series(), 0)?;
    Ok(&(&(&s3 * &t0) * &jet(a1, 1)?) * &jet(b1, 0)?)
}

/// `s'''(0) t(0) β_1(0) β_2'''(0)`. Requires `n2 >= 2`.
pub fn k3_reference_product(frame: &LocalFrame) -> Result<Rational> {
    if frame.beta().len() < 2 {
        return Err(Error::InvalidArgument("needs n2 >= 2".into()));
    }
    let s3 = jet(frame.s_series(), 3)?;
    let t0 = jet(&frame.t_series(), 0)?;
    let b = frame.beta();
    Ok(&(&(&s3 * &t0) * &jet(&b[0], 0)?) * &jet(&b[1], 3)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{build_curve, Curve};
    use crate::gaussian::{GradedPiece, WedgeVector};
    use crate::schiffer::frame::default_truncation;
    use crate::schiffer::tensor::canonical_tensor;

    fn curve(r1: usize, r2: usize) -> Curve {
        let roots = (0..(r1 + r2) as i64).map(|t| Rational::from(if t % 2 == 0 { t } else { -t })).collect();
        let mut e = vec![1; r1];
        e.extend(vec![2; r2]);
        build_curve(roots, e).unwrap()
    }

    fn setup(r1: usize, r2: usize) -> (Curve, LocalFrame) {
        let c = curve(r1, r2);
        let f = LocalFrame::new(&c, default_truncation(&c)).unwrap();
        (c, f)
    }

    fn quadric(c: &Curve, f: &LocalFrame, piece: GradedPiece, i: usize, j: usize) -> CanonicalTensor {
        canonical_tensor(c, &WedgeVector::basis(c, piece, i, j).unwrap(), Some(f)).unwrap()
    }

    #[test]
    fn basis_quadrics_vanish_to_third_order() {
        let (c, f) = setup(12, 0);
        for piece in GradedPiece::ALL {
            for (i, j) in piece.pairs(&c) {
                let q = quadric(&c, &f, piece, i, j);
                for h in 0..=3 {
                    for l in 0..=3 - h {
                        assert!(derivative_sum(&f, &q, h, l).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_quadric_orders() {
        let (c, f) = setup(12, 0);
        let cases = [
            (GradedPiece::LM, 1, 1, 3),
            (GradedPiece::MM, 1, 2, 5),
            (GradedPiece::LL, 1, 2, 7),
        ];
        for (piece, i, j, m) in cases {
            let q = quadric(&c, &f, piece, i, j);
            let v = vanishing_order(&f, &q, DEFAULT_ORDER_CEILING).unwrap();
            assert_eq!(v, VanishingOrder { order: m, capped: false }, "{piece}:{i}:{j}");
        }
        let q = quadric(&c, &f, GradedPiece::LM, 1, 1);
        assert!(!derivative_sum(&f, &q, 4, 0).unwrap().is_zero());
        assert_eq!(derivative_sum(&f, &q, 3, 1).unwrap(), derivative_sum(&f, &q, 1, 3).unwrap());
    }

    #[test]
    fn rho_domain() {
        let (c, f) = setup(12, 0);
        let q = quadric(&c, &f, GradedPiece::MM, 1, 2);
        assert!(rho(&f, &q, 2, 3).unwrap().q.is_zero());
        assert!(!rho(&f, &q, 3, 3).unwrap().q.is_zero());
        assert_eq!(
            rho(&f, &q, 3, 4),
            Err(Error::FormulaInapplicable { sum: 7, order: 5 })
        );
        assert!(rho(&f, &q, 0, 3).is_err());
    }

    #[test]
    fn truncation_guard() {
        let (c, f) = setup(12, 0);
        let q = quadric(&c, &f, GradedPiece::LM, 1, 1);
        assert!(matches!(
            derivative_sum(&f, &q, f.truncation() + 1, 0),
            Err(Error::IncreaseTruncation { .. })
        ));
    }
}
