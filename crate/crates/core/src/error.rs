use thiserror::Error;

use crate::exact::Rational;
use crate::gaussian::GradedPiece;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a simple branch at origin")]
    NotSimpleBranch,
    #[error("series composition requires an inner series with zero constant term")]
    CompositionContract,
    #[error("series has no inverse: zero constant term")]
    NotInvertible,

    #[error("branch data is empty")]
    EmptyBranchData,
    #[error("roots and exponents differ in length ({roots} vs {exponents})")]
    LengthMismatch { roots: usize, exponents: usize },
    #[error("bad exponent {0}: exponents must be 1 or 2")]
    BadExponent(u32),
    #[error("degenerate branch divisor: duplicate root {0}")]
    DegenerateBranchDivisor(Rational),
    #[error("not a cyclic trigonal datum: exponent sum {0} is not divisible by 3")]
    NotCyclicTrigonal(u32),
    #[error("normalize first root to 0 (first root is {0}, listed with exponent 1)")]
    NotNormalized(Rational),
    #[error("genus too small for this decomposition (n1 = {n1}, n2 = {n2})")]
    GenusTooSmall { n1: i64, n2: i64 },

    #[error("closed form valid only for the r2=0 family")]
    ClosedFormFamily,
    #[error("no closed-form system for piece {piece} at k = {k}; use the wronskian method")]
    NoClosedForm { piece: GradedPiece, k: usize },
    #[error("oracle mismatch on piece {piece} at k = {k}")]
    OracleMismatch {
        piece: GradedPiece,
        k: usize,
        witness: Vec<Rational>,
    },
    #[error("identity only asserted on the kernel chain")]
    IdentityPrecondition,
    #[error("index pair ({0}, {1}) outside the piece's index set")]
    IndexOutOfRange(usize, usize),

    #[error("expansion point must be a simple branch point")]
    ExpansionPointNotSimple,
    #[error("increase truncation: need order {needed}, have {have}")]
    IncreaseTruncation { needed: usize, have: usize },
    #[error("formula inapplicable at this depth (n + l = {sum}, vanishing order {order})")]
    FormulaInapplicable { sum: usize, order: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency fault: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSimpleBranch => "not_simple_branch",
            Error::CompositionContract => "composition_contract",
            Error::NotInvertible => "not_invertible",
            Error::EmptyBranchData => "empty_branch_data",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::BadExponent(_) => "bad_exponent",
            Error::DegenerateBranchDivisor(_) => "duplicate_root",
            Error::NotCyclicTrigonal(_) => "not_cyclic_trigonal",
            Error::NotNormalized(_) => "first_root_not_zero",
            Error::GenusTooSmall { .. } => "genus_too_small",
            Error::ClosedFormFamily => "closed_form_family",
            Error::NoClosedForm { .. } => "no_closed_form",
            Error::OracleMismatch { .. } => "oracle_mismatch",
            Error::IdentityPrecondition => "identity_precondition",
            Error::IndexOutOfRange(..) => "index_out_of_range",
            Error::ExpansionPointNotSimple => "expansion_point_not_simple",
            Error::IncreaseTruncation { .. } => "increase_truncation",
            Error::FormulaInapplicable { .. } => "formula_inapplicable",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Internal(_) => "internal",
        }
    }
}
