//! Exact arithmetic: rationals, polynomials, rational functions, truncated
//! power series and linear algebra over Q.

mod matrix;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use matrix::{ExactMatrix, Subspace};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{ParseRationalError, Rational};
pub use series::{series_solve_branch, PowerSeries};
