use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::BranchData;
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub r1: usize,
    pub r2: usize,
    pub seed: u64,
    /// Largest denominator drawn; 1 gives integer roots.
    #[serde(default = "default_max_denom")]
    pub max_denom: u64,
}

fn default_max_denom() -> u64 {
    1
}

impl GeneratorParams {
    pub fn new(r1: usize, r2: usize, seed: u64) -> Self {
        GeneratorParams {
            r1,
            r2,
            seed,
            max_denom: 1,
        }
    }
}

/// Draw `r1 + r2` distinct roots with `t_1 = 0`, numerators bounded by `r^2`.
pub fn generate_branch(params: &GeneratorParams) -> Result<BranchData> {
    let r = params.r1 + params.r2;
    if params.r1 == 0 {
        return Err(Error::InvalidArgument("generator needs r1 >= 1 so the origin is a simple root".into()));
    }
    if params.max_denom == 0 {
        return Err(Error::InvalidArgument("max_denom must be positive".into()));
    }
    let bound = (r * r) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut seen = BTreeSet::new();
    seen.insert(Rational::zero());
    let mut roots = vec![Rational::zero()];
    while roots.len() < r {
        let p: i64 = rng.gen_range(-bound..=bound);
        let q: i64 = rng.gen_range(1..=params.max_denom as i64);
        let t = Rational::new(p, q);
        if seen.insert(t.clone()) {
            roots.push(t);
        }
    }
    let mut exponents = vec![1; params.r1];
    exponents.extend(std::iter::repeat_n(2, params.r2));
    BranchData::new(roots, exponents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct() {
        let p = GeneratorParams::new(18, 0, 7);
        let a = generate_branch(&p).unwrap();
        assert_eq!(a, generate_branch(&p).unwrap());
        assert_eq!(a.roots().len(), 18);
        assert!(a.roots()[0].is_zero());
        let set: BTreeSet<_> = a.roots().iter().collect();
        assert_eq!(set.len(), 18);
        assert!(a.roots().iter().all(|t| t.is_integer() && t.abs() <= Rational::from(324)));
        assert_ne!(a, generate_branch(&GeneratorParams::new(18, 0, 8)).unwrap());
    }

    #[test]
    fn denominators_respect_cap() {
        let p = GeneratorParams {
            max_denom: 5,
            ..GeneratorParams::new(6, 6, 3)
        };
        let b = generate_branch(&p).unwrap();
        assert!(b.roots().iter().all(|t| t.denom() <= &5.into()));
        assert_eq!(b.exponents().iter().filter(|&&a| a == 2).count(), 6);
    }

    #[test]
    fn exponent_sum_checked() {
        assert_eq!(
            generate_branch(&GeneratorParams::new(10, 8, 1)),
            Err(Error::NotCyclicTrigonal(26))
        );
    }
}
