use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::{series_solve_branch, Polynomial, PowerSeries, Rational};

/// Default truncation `3r + 16`.
pub fn default_truncation(c: &Curve) -> usize {
    3 * c.r() + 16
}

/// Local expansions at `p = (0, 0)` in the coordinate `z = y`.
///
/// All stored series share the truncation `N - 3`, the precision left after
/// dividing `x'(z)` by `z^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFrame {
    requested: usize,
    truncation: usize,
    n1: usize,
    n2: usize,
    x: PowerSeries,
    alpha: Vec<PowerSeries>,
    beta: Vec<PowerSeries>,
    canonical: Vec<PowerSeries>,
}

impl LocalFrame {
    pub fn new(c: &Curve, n: usize) -> Result<Self> {
        if c.branch().exponents()[0] != 1 {
            return Err(Error::ExpansionPointNotSimple);
        }
        let frame = LocalFrame::from_polynomials(c.h(), c.g_factor(), c.n1(), c.n2(), n)?;
        let needed = (3 * c.n1() + 1).max(3 * c.n2());
        if frame.truncation < needed {
            return Err(Error::IncreaseTruncation {
                needed: needed + 3,
                have: n,
            });
        }
        Ok(frame)
    }

    /// Builds the frame for `y^3 = h` directly, without the curve's validity checks.
    pub fn from_polynomials(h: &Polynomial, g: &Polynomial, n1: usize, n2: usize, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::IncreaseTruncation { needed: 4, have: n });
        }
        let x = series_solve_branch(h, n)?;
        let t = n - 3;
        let dx = x.derivative();
        let over_z = dx.div_z_power(1)?.truncate(t);
        let over_z2 = dx.div_z_power(2)?.truncate(t);
        let x_t = x.truncate(t);
        let g_local = PowerSeries::eval_polynomial(g, &x_t);
        let powers: Vec<PowerSeries> = (0..=n1.max(n2) + 1).map(|a| x_t.pow(a as u32)).collect();
        let simple = |a: usize| &powers[a] * &over_z;
        let double = |b: usize| &(&powers[b] * &g_local) * &over_z2;
        let alpha = (1..=n1).map(|i| simple(i - 1)).collect();
        let beta = (1..=n2).map(|j| double(j - 1)).collect();
        let canonical = (0..=n1).map(simple).chain((0..=n2).map(double)).collect();
        Ok(LocalFrame {
            requested: n,
            truncation: t,
            n1,
            n2,
            x: x_t,
            alpha,
            beta,
            canonical,
        })
    }

    /// The `N` passed at construction.
    pub fn requested_truncation(&self) -> usize {
        self.requested
    }

    /// Truncation shared by every stored series.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn x_series(&self) -> &PowerSeries {
        &self.x
    }

    /// `s(z) = x(z)`
    pub fn s_series(&self) -> &PowerSeries {
        &self.x
    }

    /// `t(z) = 1`
    pub fn t_series(&self) -> PowerSeries {
        PowerSeries::one(self.truncation)
    }

    /// `α_i = x^(i-1) x' / z`, `i = 1..n1`.
    pub fn alpha(&self) -> &[PowerSeries] {
        &self.alpha
    }

    /// `β_j = x^(j-1) G(x) x' / z^2`, `j = 1..n2`.
    pub fn beta(&self) -> &[PowerSeries] {
        &self.beta
    }

    /// Canonical forms divided by `dz`, in the order of the `K` basis.
    pub fn canonical(&self) -> &[PowerSeries] {
        &self.canonical
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn genus(&self) -> usize {
        self.canonical.len()
    }

    /// Orders of `α_1..α_n1` followed by `β_1..β_n2`.
    pub fn m_orders(&self) -> Vec<Option<usize>> {
        self.alpha.iter().chain(&self.beta).map(PowerSeries::order).collect()
    }

    pub fn k_orders(&self) -> Vec<Option<usize>> {
        self.canonical.iter().map(PowerSeries::order).collect()
    }
}

/// Positions of `tα_i`, `sα_i`, `tβ_j`, `sβ_j` in the canonical basis (indices from 1).
pub(crate) mod slots {
    pub fn t_alpha(i: usize) -> usize {
        i - 1
    }
    pub fn s_alpha(i: usize) -> usize {
        i
    }
    pub fn t_beta(n1: usize, j: usize) -> usize {
        n1 + j
    }
    pub fn s_beta(n1: usize, j: usize) -> usize {
        n1 + 1 + j
    }
}

/// `h!` times the coefficient of `z^h`.
pub(crate) fn jet(s: &PowerSeries, h: usize) -> Result<Rational> {
    s.jet(h).ok_or(Error::IncreaseTruncation {
        needed: h,
        have: s.truncation(),
    })
}
