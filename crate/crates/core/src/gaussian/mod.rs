//! Restricted higher Gaussian maps on the graded pieces of `Λ² H⁰(M)`.

mod chain;
mod closed_form;
mod piece;
mod wronskian;

pub use chain::{
    expected_wedge_kernel_dim, expected_wedge_rank, kernel_chain, kernel_chain_with, kernel_vectors,
    level_numerators, mu2_kernel, mu2_kernel_with, split_independence, verify_g2_identity, ChainLevel,
    ChainMethod, KernelChain, Mu2Kernel, SplitComparison,
};
pub use closed_form::{kernel_equations, mixed_mu1_equations};
pub use piece::{GradedPiece, QuadricId, WedgeVector};
pub use wronskian::{derivative_numerators, wronskian, wronskian_with, FormVariant, PieceForms};
