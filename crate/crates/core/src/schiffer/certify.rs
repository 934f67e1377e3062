use serde::Serialize;

use super::frame::LocalFrame;
use super::rho::{derivative_sum, rho, vanishing_order, RhoValue};
use super::tensor::{canonical_tensor, CanonicalTensor};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::gaussian::{kernel_chain, kernel_vectors, mu2_kernel, ChainMethod, GradedPiece, QuadricId, WedgeVector};

/// Largest `k` for which certificates are part of the verified range.
pub const VERIFIED_CERTIFICATE_DEPTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub quadric: String,
    pub rho: RhoValue,
    pub experimental: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateOutcome {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A candidate quadric whose tensor is built on first use.
struct Candidate {
    id: String,
    vector: WedgeVector,
    tensor: Option<CanonicalTensor>,
}

impl Candidate {
    fn tensor(&mut self, c: &Curve) -> Result<&CanonicalTensor> {
        if self.tensor.is_none() {
            self.tensor = Some(canonical_tensor(c, &self.vector, None)?);
        }
        Ok(self.tensor.as_ref().expect("just built"))
    }
}

fn candidates(list: Vec<(String, WedgeVector)>) -> Vec<Candidate> {
    list.into_iter()
        .map(|(id, vector)| Candidate {
            id,
            vector,
            tensor: None,
        })
        .collect()
}

fn basis_candidates(c: &Curve) -> Vec<(String, WedgeVector)> {
    let preferred = [
        QuadricId::new(GradedPiece::LM, 1, 1),
        QuadricId::new(GradedPiece::MM, 1, 2),
        QuadricId::new(GradedPiece::LL, 1, 2),
    ];
    let mut out: Vec<(String, WedgeVector)> = Vec::new();
    for id in preferred {
        if let Ok(v) = WedgeVector::basis(c, id.piece, id.i, id.j) {
            out.push((id.to_string(), v));
        }
    }
    for piece in GradedPiece::ALL {
        for (i, j) in piece.pairs(c) {
            let id = QuadricId::new(piece, i, j);
            if !preferred.contains(&id) {
                out.push((id.to_string(), WedgeVector::basis(c, piece, i, j).expect("pair from index set")));
            }
        }
    }
    out
}

/// Basis vectors of the wedge chain levels and of the mixed first-order kernel,
/// labelled `PIECE:k<level>:<index>`.
fn chain_candidates(c: &Curve) -> Result<Vec<(String, WedgeVector)>> {
    let mut out = Vec::new();
    for piece in [GradedPiece::LL, GradedPiece::MM] {
        let n = piece.factor_sizes(c).0;
        if n < 2 {
            continue;
        }
        let chain = kernel_chain(c, piece, (n / 2).max(1), ChainMethod::ClosedForm)?;
        for level in &chain.levels()[1..] {
            for (idx, v) in kernel_vectors(c, piece, &level.kernel).into_iter().enumerate() {
                out.push((format!("{piece}:k{}:{}", level.k, idx + 1), v));
            }
        }
    }
    let lm = kernel_chain(c, GradedPiece::LM, 1, ChainMethod::Wronskian)?;
    for (idx, v) in kernel_vectors(c, GradedPiece::LM, &lm.levels()[1].kernel).into_iter().enumerate() {
        out.push((format!("LM:k1:{}", idx + 1), v));
    }
    Ok(out)
}

fn first_certificate(
    c: &Curve,
    frame: &LocalFrame,
    candidates: &mut [Candidate],
    k: usize,
) -> Result<Option<Certificate>> {
    for cand in candidates {
        let tensor = cand.tensor(c)?;
        let m = vanishing_order(frame, tensor, 2 * k - 1)?;
        if m.order < 2 * k - 1 {
            continue;
        }
        let value = rho(frame, tensor, k, k)?;
        if !value.q.is_zero() {
            return Ok(Some(Certificate {
                k,
                quadric: cand.id.clone(),
                rho: value,
                experimental: k > VERIFIED_CERTIFICATE_DEPTH,
            }));
        }
    }
    Ok(None)
}

/// For each `k = 2..=k_max`, the first quadric (in search order) with vanishing
/// order `2k - 1` and `ρ(Q)(ξ^k ⊙ ξ^k) ≠ 0`.
///
/// Search order: `LM:1:1`, `MM:1:2`, `LL:1:2`, the other basis quadrics, then
/// kernel-chain basis vectors.
pub fn certify_non_asymptotic(c: &Curve, frame: &LocalFrame, k_max: usize) -> Result<Vec<CertificateOutcome>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("certificate search needs k_max >= 2".into()));
    }
    let mut basis = candidates(basis_candidates(c));
    let mut chain: Option<Vec<Candidate>> = None;
    let mut out = Vec::new();
    for k in 2..=k_max {
        let mut found = first_certificate(c, frame, &mut basis, k)?;
        if found.is_none() {
            let list = match chain.as_mut() {
                Some(list) => list,
                None => chain.insert(candidates(chain_candidates(c)?)),
            };
            found = first_certificate(c, frame, list, k)?;
        }
        let note = match (&found, k) {
            (None, 2) if c.n1() == 0 => Some("no certificate found: LM:1:1 absent (n1 = 0)".to_string()),
            (None, _) => Some("no certificate found".to_string()),
            (Some(cert), _) if cert.experimental => Some("beyond the verified range".to_string()),
            _ => None,
        };
        out.push(CertificateOutcome {
            k,
            certificate: found,
            note,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyFailure {
    pub piece: GradedPiece,
    pub vector: usize,
    pub h: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub holds: bool,
    /// Set for curves with exponent-2 roots, where the statement is only an experiment.
    pub experimental: bool,
    pub max_total: usize,
    pub vectors_checked: usize,
    pub failures: Vec<IsotropyFailure>,
}

/// Total order `h + l` through which second-kernel quadrics must vanish.
pub const ISOTROPY_DEPTH: usize = 9;

/// Checks every derivative sum with `h + l <= 9` on every basis vector of the
/// second-order kernel.
pub fn isotropy_check(c: &Curve, frame: &LocalFrame) -> Result<IsotropyReport> {
    let kernel = mu2_kernel(c)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for piece in GradedPiece::ALL {
        for (idx, v) in kernel_vectors(c, piece, kernel.kernel(piece)).iter().enumerate() {
            checked += 1;
            let q = canonical_tensor(c, v, Some(frame))?;
            'scan: for total in 0..=ISOTROPY_DEPTH {
                for h in 0..=total {
                    if !derivative_sum(frame, &q, h, total - h)?.is_zero() {
                        failures.push(IsotropyFailure {
                            piece,
                            vector: idx + 1,
                            h,
                            l: total - h,
                        });
                        break 'scan;
                    }
                }
            }
        }
    }
    Ok(IsotropyReport {
        holds: failures.is_empty(),
        experimental: c.r2() != 0,
        max_total: ISOTROPY_DEPTH,
        vectors_checked: checked,
        failures,
    })
}

/// Genus from which the strictness argument applies.
pub const STRICTNESS_GENUS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub genus: usize,
    pub n2: usize,
    pub regime_met: bool,
    /// Kernel dimensions on `Λ² W2` for `k = 0..=floor(n2 / 2)`.
    pub dims: Vec<usize>,
    /// `strict[k-1]` is true when level `k` is a proper subspace of level `k - 1`.
    pub strict: Vec<bool>,
    pub all_strict: bool,
    pub note: String,
}

pub fn kernel_chain_strictness_report(c: &Curve, method: ChainMethod) -> Result<StrictnessReport> {
    let n2 = c.n2();
    let depth = n2 / 2;
    let dims = if depth == 0 {
        vec![GradedPiece::MM.dim(c)]
    } else {
        kernel_chain(c, GradedPiece::MM, depth, method)?.dims()
    };
    let strict: Vec<bool> = dims.windows(2).map(|w| w[1] < w[0]).collect();
    let all_strict = strict.iter().all(|&s| s);
    let regime_met = c.genus() >= STRICTNESS_GENUS;
    let note = if !regime_met {
        format!("strictness regime not met (g = {} < {STRICTNESS_GENUS})", c.genus())
    } else if all_strict {
        format!(
            "strict for k = 1..{depth}; hence no asymptotic directions in <xi^1..xi^{depth}> at a general point"
        )
    } else {
        "chain not strictly decreasing".to_string()
    };
    Ok(StrictnessReport {
        genus: c.genus(),
        n2,
        regime_met,
        dims,
        strict,
        all_strict,
        note,
    })
}
