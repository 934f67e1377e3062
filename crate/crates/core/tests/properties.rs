use proptest::prelude::*;

use trigauss_core::curve::{SymmetricCoefficients, TwistedFunction};
use trigauss_core::exact::{series_solve_branch, ExactMatrix, Polynomial, PowerSeries, Rational, RationalFunction};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..max_len).prop_map(Polynomial::new)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> ExactMatrix {
    let cols = rows[0].len();
    ExactMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect(),
        cols,
    )
}

/// Distinct nonzero integer roots, plus the origin.
fn branch_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::btree_set(1i64..=15, 2..6).prop_map(|set| {
        let mut roots = vec![Rational::zero()];
        roots.extend(set.into_iter().enumerate().map(|(i, t)| Rational::from(if i % 2 == 0 { t } else { -t })));
        roots
            .iter()
            .fold(Polynomial::one(), |acc, t| &acc * &Polynomial::linear_factor(t))
    })
}

fn naive_product(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![Rational::zero(); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    Polynomial::new(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_ignores_row_and_column_order(rows in matrix()) {
        let m = to_matrix(&rows);
        let mut reversed = rows.clone();
        reversed.reverse();
        for r in &mut reversed {
            r.reverse();
        }
        prop_assert_eq!(m.rank(), to_matrix(&reversed).rank());
        prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
    }

    #[test]
    fn nullspace_is_row_order_invariant(rows in matrix()) {
        let m = to_matrix(&rows);
        let mut shuffled = rows.clone();
        shuffled.rotate_left(1);
        let (a, b) = (m.nullspace(), to_matrix(&shuffled).nullspace());
        prop_assert!(a.contains_subspace(&b) && b.contains_subspace(&a));
        for v in a.basis() {
            prop_assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn product_matches_naive_convolution(a in poly(8), b in poly(8)) {
        prop_assert_eq!(&a * &b, naive_product(&a, &b));
    }

    #[test]
    fn series_reciprocal(coeffs in prop::collection::vec(small_rational(), 1..10), c0 in 1i64..5) {
        let mut coeffs = coeffs;
        coeffs[0] = Rational::from(c0);
        let t = coeffs.len() + 3;
        let s = PowerSeries::new(coeffs, t);
        prop_assert_eq!(&s * &s.recip().unwrap(), PowerSeries::one(t));
    }

    #[test]
    fn derivation_is_leibniz(h in branch_poly(), p in poly(5), q in poly(5), e in 0u32..3, f in 0u32..3) {
        let a = TwistedFunction::from_poly(p, e);
        let b = TwistedFunction::from_poly(q, f);
        let lhs = a.mul(&b).derivative(&h);
        let rhs = a.derivative(&h).mul(&b).add(&a.mul(&b.derivative(&h))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_of_y_power(h in branch_poly(), e in 1u32..4) {
        let d = TwistedFunction::from_poly(Polynomial::one(), e).derivative(&h);
        let expect = RationalFunction::new(h.derivative().scale(&Rational::new(-(e as i64), 3)), h.clone());
        prop_assert_eq!(d.value(), &expect);
    }

    #[test]
    fn branch_series_round_trip(h in branch_poly(), n in 8usize..24) {
        let x = series_solve_branch(&h, n).unwrap();
        prop_assert!(x.coeff(0).unwrap().is_zero());
        let lhs = PowerSeries::eval_polynomial(&h, &x);
        prop_assert_eq!(lhs, PowerSeries::monomial(Rational::one(), 3, x.truncation()));
    }

    #[test]
    fn symmetric_coefficients_round_trip(h in branch_poly()) {
        let sigma = SymmetricCoefficients::from_polynomial(&h);
        prop_assert_eq!(sigma.to_polynomial(), h.clone());
        prop_assert_eq!(sigma.get(0), Rational::one());
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
        prop_assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{text}\""));
    }
}
