//! Exact computations on cyclic trigonal curves: higher Gaussian maps, their kernel
//! chains, and the second fundamental form on higher Schiffer variations.

pub mod curve;
pub mod error;
pub mod exact;
pub mod gaussian;
pub mod schiffer;

pub use error::{Error, Result};
