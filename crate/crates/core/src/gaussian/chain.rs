use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::{Polynomial, Subspace};

use super::closed_form::{kernel_equations, mixed_mu1_equations};
use super::wronskian::{FormVariant, PieceForms};
use super::{GradedPiece, WedgeVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMethod {
    ClosedForm,
    Wronskian,
    Both,
}

impl FromStr for ChainMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed-form" => Ok(ChainMethod::ClosedForm),
            "wronskian" => Ok(ChainMethod::Wronskian),
            "both" => Ok(ChainMethod::Both),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for ChainMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainMethod::ClosedForm => "closed_form",
            ChainMethod::Wronskian => "wronskian",
            ChainMethod::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLevel {
    pub k: usize,
    pub kernel: Subspace,
    /// Dimension drop from the previous level (0 for the sentinel level).
    pub rank: usize,
}

/// `levels[0]` is the whole piece; `levels[k]` is the kernel of the order-`(2k-1)`
/// map restricted to `levels[k-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelChain {
    piece: GradedPiece,
    levels: Vec<ChainLevel>,
}

impl KernelChain {
    pub fn piece(&self) -> GradedPiece {
        self.piece
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&ChainLevel> {
        self.levels.get(k)
    }

    pub fn k_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// Ranks for `k = 1..=k_max`.
    pub fn ranks(&self) -> Vec<usize> {
        self.levels[1..].iter().map(|l| l.rank).collect()
    }

    /// Kernel dimensions for `k = 0..=k_max`.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.kernel.dim()).collect()
    }

    /// Mixed-piece levels past `k = 1` have no closed-form counterpart.
    pub fn is_experimental(&self) -> bool {
        self.piece == GradedPiece::LM && self.k_max() >= 2
    }
}

/// Expected rank `2n - 4k + 1` on a wedge piece, 0 once `k > floor(n / 2)`.
pub fn expected_wedge_rank(n: usize, k: usize) -> usize {
    if k == 0 || k > n / 2 {
        0
    } else {
        2 * n - 4 * k + 1
    }
}

/// Expected kernel dimension `n(n-1)/2 - k(2n - 2k - 1)` for `k <= floor(n / 2)`.
pub fn expected_wedge_kernel_dim(n: usize, k: usize) -> usize {
    let (n, k) = (n as i64, k.min(n / 2) as i64);
    (n * (n - 1) / 2 - k * (2 * n - 2 * k - 1)) as usize
}

fn closed_form_level(c: &Curve, piece: GradedPiece, k: usize) -> Result<Subspace> {
    if piece == GradedPiece::LM {
        if k != 1 {
            return Err(Error::NoClosedForm { piece, k });
        }
        return Ok(mixed_mu1_equations(c)?.nullspace());
    }
    Ok(kernel_equations(c, piece, k)?.nullspace())
}

fn wronskian_levels(c: &Curve, piece: GradedPiece, k_max: usize, variant: FormVariant) -> Vec<ChainLevel> {
    let pairs = piece.pairs(c);
    let forms = PieceForms::new(c, piece, variant, k_max);
    let mut levels = vec![ChainLevel {
        k: 0,
        kernel: Subspace::full(pairs.len()),
        rank: 0,
    }];
    for k in 1..=k_max {
        let prev = &levels[k - 1].kernel;
        let images = forms.images(&pairs, prev.basis(), k, k - 1);
        let (rank, kernel) = prev.restricted_kernel(&images);
        levels.push(ChainLevel { k, kernel, rank });
    }
    levels
}

fn mismatch(piece: GradedPiece, k: usize, a: &Subspace, b: &Subspace) -> Error {
    let witness = a
        .witness_outside(b)
        .or_else(|| b.witness_outside(a))
        .unwrap_or_default();
    Error::OracleMismatch { piece, k, witness }
}

pub fn kernel_chain(c: &Curve, piece: GradedPiece, k_max: usize, method: ChainMethod) -> Result<KernelChain> {
    kernel_chain_with(c, piece, k_max, method, FormVariant::WithFactor)
}

/// As [`kernel_chain`], choosing the `W2` forms used by the Wronskian method.
pub fn kernel_chain_with(
    c: &Curve,
    piece: GradedPiece,
    k_max: usize,
    method: ChainMethod,
    variant: FormVariant,
) -> Result<KernelChain> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if method != ChainMethod::Wronskian && piece == GradedPiece::LM {
        if k_max >= 2 {
            return Err(Error::NoClosedForm { piece, k: 2 });
        }
        if c.r2() != 0 {
            return Err(Error::ClosedFormFamily);
        }
    }
    let dim = piece.dim(c);
    let levels = match method {
        ChainMethod::Wronskian => wronskian_levels(c, piece, k_max, variant),
        ChainMethod::ClosedForm | ChainMethod::Both => {
            let mut levels = vec![ChainLevel {
                k: 0,
                kernel: Subspace::full(dim),
                rank: 0,
            }];
            for k in 1..=k_max {
                let kernel = closed_form_level(c, piece, k)?;
                let prev = &levels[k - 1].kernel;
                if !prev.contains_subspace(&kernel) {
                    return Err(mismatch(piece, k, prev, &kernel));
                }
                let rank = prev.dim() - kernel.dim();
                levels.push(ChainLevel { k, kernel, rank });
            }
            if method == ChainMethod::Both {
                let oracle = wronskian_levels(c, piece, k_max, variant);
                for (a, b) in levels.iter().zip(&oracle) {
                    if a.kernel != b.kernel {
                        return Err(mismatch(piece, a.k, &a.kernel, &b.kernel));
                    }
                }
            }
            levels
        }
    };
    Ok(KernelChain { piece, levels })
}

/// Basis vectors of a subspace of the piece as sparse wedge vectors.
pub fn kernel_vectors(c: &Curve, piece: GradedPiece, space: &Subspace) -> Vec<WedgeVector> {
    space
        .basis()
        .iter()
        .map(|v| WedgeVector::from_dense(c, piece, v).expect("dimension matches piece"))
        .collect()
}

/// Kernels of the second Gaussian map on each piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mu2Kernel {
    pub ll: Subspace,
    pub mm: Subspace,
    pub lm: Subspace,
    pub ranks: [usize; 3],
}

impl Mu2Kernel {
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn kernel(&self, piece: GradedPiece) -> &Subspace {
        match piece {
            GradedPiece::LL => &self.ll,
            GradedPiece::MM => &self.mm,
            GradedPiece::LM => &self.lm,
        }
    }

    pub fn rank(&self, piece: GradedPiece) -> usize {
        self.ranks[piece as usize]
    }

    pub fn vectors(&self, c: &Curve) -> Vec<WedgeVector> {
        GradedPiece::ALL
            .iter()
            .flat_map(|&p| kernel_vectors(c, p, self.kernel(p)))
            .collect()
    }
}

/// Closed forms where available, cross-checked against the Wronskian oracle.
pub fn mu2_kernel(c: &Curve) -> Result<Mu2Kernel> {
    mu2_kernel_with(c, ChainMethod::Both)
}

pub fn mu2_kernel_with(c: &Curve, method: ChainMethod) -> Result<Mu2Kernel> {
    let mut spaces = Vec::with_capacity(3);
    let mut ranks = [0usize; 3];
    for piece in GradedPiece::ALL {
        let m = if piece == GradedPiece::LM && c.r2() != 0 {
            ChainMethod::Wronskian
        } else {
            method
        };
        let chain = kernel_chain(c, piece, 1, m)?;
        ranks[piece as usize] = chain.levels[1].rank;
        spaces.push(chain.levels[1].kernel.clone());
    }
    let lm = spaces.pop().unwrap();
    let mm = spaces.pop().unwrap();
    let ll = spaces.pop().unwrap();
    Ok(Mu2Kernel { ll, mm, lm, ranks })
}

/// Checks that the Wronskian at split `(k, k-1)` with the `G`-carrying forms equals
/// `G^2` times the one with stripped forms. Requires `v` to lie on level `k - 1`
/// of the wedge chain on `Λ² W2`.
pub fn verify_g2_identity(c: &Curve, v: &WedgeVector, k: usize) -> Result<bool> {
    if v.piece() != GradedPiece::MM || k == 0 {
        return Err(Error::IdentityPrecondition);
    }
    v.validate(c)?;
    if k >= 2 {
        let level = kernel_chain(c, GradedPiece::MM, k - 1, ChainMethod::ClosedForm)?;
        if !level.levels[k - 1].kernel.contains(&v.to_dense(c)) {
            return Err(Error::IdentityPrecondition);
        }
    }
    let carrying = PieceForms::new(c, GradedPiece::MM, FormVariant::WithFactor, k);
    let stripped = PieceForms::new(c, GradedPiece::MM, FormVariant::Stripped, k);
    let lhs = carrying.combination_numerator(v.iter(), k, k - 1);
    let rhs = &stripped.combination_numerator(v.iter(), k, k - 1) * &c.g_factor().pow(2);
    Ok(lhs == rhs)
}

/// For each split `(r, s)` with `r > s`, `r + s = 2k - 1`, the kernel on level `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitComparison {
    pub piece: GradedPiece,
    pub k: usize,
    pub splits: Vec<((usize, usize), usize)>,
    pub independent: bool,
    /// A vector killed by one split but not another, when `independent` is false.
    pub witness: Option<WedgeVector>,
}

/// Measures whether the level-`k` kernel depends on the chosen split.
pub fn split_independence(c: &Curve, piece: GradedPiece, k: usize) -> Result<SplitComparison> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let chain = kernel_chain(c, piece, k, ChainMethod::Wronskian)?;
    let prev = &chain.levels[k - 1].kernel;
    let pairs = piece.pairs(c);
    let order = 2 * k - 1;
    let forms = PieceForms::new(c, piece, FormVariant::WithFactor, order);
    let mut kernels = Vec::new();
    for r in k..=order {
        let s = order - r;
        let images = forms.images(&pairs, prev.basis(), r, s);
        kernels.push(((r, s), prev.restricted_kernel(&images).1));
    }
    let reference = &kernels[0].1;
    let witness = kernels.iter().find_map(|(_, kern)| {
        reference
            .witness_outside(kern)
            .or_else(|| kern.witness_outside(reference))
    });
    Ok(SplitComparison {
        piece,
        k,
        splits: kernels.iter().map(|(sp, kern)| (*sp, kern.dim())).collect(),
        independent: witness.is_none(),
        witness: witness.map(|w| WedgeVector::from_dense(c, piece, &w).expect("dimension matches piece")),
    })
}

/// `Σ a_ij (f_i^(r) f_j^(s) - f_i^(s) f_j^(r))` numerators for each basis vector of a level.
pub fn level_numerators(c: &Curve, piece: GradedPiece, space: &Subspace, split: (usize, usize)) -> Vec<Polynomial> {
    let pairs = piece.pairs(c);
    let forms = PieceForms::new(c, piece, FormVariant::WithFactor, split.0.max(split.1));
    space
        .basis()
        .iter()
        .map(|v| forms.combination_numerator(pairs.iter().zip(v.iter()), split.0, split.1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;
    use crate::exact::Rational;

    fn curve(r1: usize, r2: usize) -> Curve {
        let roots = (0..(r1 + r2) as i64).map(|t| Rational::from(if t % 2 == 0 { t } else { -t })).collect();
        let mut e = vec![1; r1];
        e.extend(vec![2; r2]);
        build_curve(roots, e).unwrap()
    }

    #[test]
    fn expected_formulas() {
        assert_eq!((1..=6).map(|k| expected_wedge_rank(10, k)).collect::<Vec<_>>(), [17, 13, 9, 5, 1, 0]);
        assert_eq!(expected_wedge_kernel_dim(10, 2), 15);
        assert_eq!(expected_wedge_kernel_dim(3, 1), 0);
    }

    #[test]
    fn genus_ten_chains_agree() {
        let c = curve(12, 0);
        for piece in [GradedPiece::LL, GradedPiece::MM] {
            let n = piece.factor_sizes(&c).0;
            let chain = kernel_chain(&c, piece, n / 2 + 1, ChainMethod::Both).unwrap();
            let expect: Vec<usize> = (1..=n / 2 + 1).map(|k| expected_wedge_rank(n, k)).collect();
            assert_eq!(chain.ranks(), expect, "{piece}");
        }
    }

    #[test]
    fn mixed_piece_first_order() {
        let c = curve(12, 0);
        let chain = kernel_chain(&c, GradedPiece::LM, 1, ChainMethod::Both).unwrap();
        assert_eq!(chain.ranks(), [12]);
        assert!(!chain.is_experimental());
        assert!(matches!(
            kernel_chain(&c, GradedPiece::LM, 2, ChainMethod::ClosedForm),
            Err(Error::NoClosedForm { .. })
        ));
        assert!(kernel_chain(&c, GradedPiece::LM, 2, ChainMethod::Wronskian).unwrap().is_experimental());
    }

    #[test]
    fn mu2_total_rank_genus_ten() {
        let c = curve(12, 0);
        let m = mu2_kernel(&c).unwrap();
        assert_eq!(m.total_rank(), 4 * 10 - 18);
    }

    #[test]
    fn general_family_wedge_chain() {
        let c = curve(6, 6);
        let chain = kernel_chain(&c, GradedPiece::MM, 3, ChainMethod::Both).unwrap();
        assert_eq!(chain.ranks(), [5, 1, 0]);
    }

    #[test]
    fn g_squared_identity() {
        let c = curve(6, 6);
        let any = WedgeVector::basis(&c, GradedPiece::MM, 1, 2).unwrap();
        assert!(verify_g2_identity(&c, &any, 1).unwrap());
        let chain = kernel_chain(&c, GradedPiece::MM, 1, ChainMethod::ClosedForm).unwrap();
        for v in kernel_vectors(&c, GradedPiece::MM, &chain.levels()[1].kernel) {
            assert!(verify_g2_identity(&c, &v, 2).unwrap());
        }
        assert_eq!(verify_g2_identity(&c, &any, 2), Err(Error::IdentityPrecondition));
    }
}
