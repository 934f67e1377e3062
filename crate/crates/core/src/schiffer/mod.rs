//! Local expansions at the ramification point over the origin, the second
//! fundamental form on higher Schiffer variations, and certificate search.

mod certify;
mod frame;
mod rho;
mod tensor;

pub use certify::{
    certify_non_asymptotic, isotropy_check, kernel_chain_strictness_report, Certificate, CertificateOutcome,
    IsotropyFailure, IsotropyReport, StrictnessReport, ISOTROPY_DEPTH, STRICTNESS_GENUS, VERIFIED_CERTIFICATE_DEPTH,
};
pub use frame::{default_truncation, LocalFrame};
pub use rho::{
    derivative_sum, k2_reference_product, k3_reference_product, rho, vanishing_order, RhoValue, VanishingOrder,
    DEFAULT_ORDER_CEILING,
};
pub use tensor::{canonical_tensor, CanonicalTensor};

use crate::curve::Curve;
use crate::error::{Error, Result};

/// Extra precision added once when a computation asks for more terms.
pub const TRUNCATION_RETRY_STEP: usize = 6;

/// Runs `f` on a frame of truncation `n` (default `3r + 16`), retrying once at
/// `n + 6` if it reports insufficient truncation. Returns the truncation used.
pub fn with_frame<T>(c: &Curve, n: Option<usize>, f: impl Fn(&LocalFrame) -> Result<T>) -> Result<(T, usize)> {
    let n = n.unwrap_or_else(|| default_truncation(c));
    let first = LocalFrame::new(c, n).and_then(|frame| f(&frame));
    match first {
        Err(Error::IncreaseTruncation { .. }) => {
            let retry = n + TRUNCATION_RETRY_STEP;
            let frame = LocalFrame::new(c, retry)?;
            Ok((f(&frame)?, retry))
        }
        other => other.map(|v| (v, n)),
    }
}
