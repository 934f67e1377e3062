use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};

use super::GradedPiece;

/// Coefficient of `a_ij` in the order-`m` equation: `(j - i) ∏_{q=0}^{m-2} (i - q)(j - q)`.
fn wedge_coefficient(i: usize, j: usize, m: usize) -> i64 {
    let (i, j) = (i as i64, j as i64);
    (0..m as i64 - 1).fold(j - i, |acc, q| acc * (i - q) * (j - q))
}

/// Equations on the wedge coefficients of `Λ² W_i` whose solution set is level `k`
/// of the kernel chain. One row per `(m, l)` with `1 <= m <= k`, `2m - 1 <= l <= 2n - 1`
/// (`l >= 3` when `m = 1`); the row collects the pairs with `i + j = l`.
///
/// The system depends only on `n`, never on the roots.
pub fn kernel_equations(c: &Curve, piece: GradedPiece, k: usize) -> Result<ExactMatrix> {
    if piece == GradedPiece::LM {
        return Err(Error::NoClosedForm { piece, k });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("kernel equations need k >= 1".into()));
    }
    let pairs = piece.pairs(c);
    let n = piece.factor_sizes(c).0;
    let mut m_rows = ExactMatrix::zeros(0, pairs.len());
    if n < 2 {
        return Ok(m_rows);
    }
    for m in 1..=k {
        let first = if m == 1 { 3 } else { 2 * m - 1 };
        for l in first..=2 * n - 1 {
            let row: Vec<Rational> = pairs
                .iter()
                .map(|&(i, j)| {
                    if i + j == l {
                        Rational::from(wedge_coefficient(i, j, m))
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            m_rows.push_row(row);
        }
    }
    Ok(m_rows)
}

/// The first-order equations on `W1 ⊗ W2` for curves without exponent-2 roots.
///
/// Row `s` (for `s = 2..=n1 + n2 + r - 1`) is the coefficient of `x^s` in
/// `Σ a_ij x^(i+j-1) [3h(i - j) + x h']`, i.e. `Σ σ_t (3(i - j) + r - t) a_ij`
/// over the pairs with `t + s + 1 = i + j + r`.
pub fn mixed_mu1_equations(c: &Curve) -> Result<ExactMatrix> {
    if c.r2() != 0 {
        return Err(Error::ClosedFormFamily);
    }
    let r = c.r() as i64;
    let sigma = c.symmetric_coeffs();
    let pairs = GradedPiece::LM.pairs(c);
    let top = c.n1() + c.n2() + c.r() - 1;
    let mut out = ExactMatrix::zeros(0, pairs.len());
    for s in 2..=top {
        let row: Vec<Rational> = pairs
            .iter()
            .map(|&(i, j)| {
                let t = (i + j) as i64 + r - s as i64 - 1;
                if t < 0 || t > r - 1 {
                    return Rational::zero();
                }
                let coeff = 3 * (i as i64 - j as i64) + r - t;
                &sigma.get(t as usize) * &Rational::from(coeff)
            })
            .collect();
        out.push_row(row);
    }
    Ok(out)
}
