//! Exact dense matrices, rank/nullspace, and subspaces in reduced row echelon form.
//!
//! Elimination runs fraction-free (Bareiss) over the integers after clearing each
//! row's denominators; results are normalized to reduced row echelon form only
//! when a `Subspace` is produced.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Rational;

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        ExactMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "ragged matrix row");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_echelon(self).pivots.len()
    }

    /// `(rank, kernel)` with `rank + dim(kernel) = cols`.
    pub fn rank_and_nullspace(&self) -> (usize, Subspace) {
        let rref = self.rref();
        let rank = rref.pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in rref.pivots.iter().enumerate() {
                    v[p] = -&rref.rows[i][f];
                }
                v
            })
            .collect();
        (rank, Subspace::from_spanning(basis, self.cols))
    }

    pub fn nullspace(&self) -> Subspace {
        self.rank_and_nullspace().1
    }

    fn rref(&self) -> Rref {
        let ech = bareiss_echelon(self);
        Rref::from_echelon(ech, self.cols)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Integer echelon form: `rows[i]` has its first nonzero entry at `pivots[i]`.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = Rational::denominator_lcm(row);
    let mut out: Vec<BigInt> = row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Fraction-free Gaussian elimination.
///
/// Rows are cleared of denominators first (row scaling does not change the row
/// space). Within each column the pivot is the candidate row with the fewest
/// nonzero entries, which keeps fill-in down on the sparse coefficient systems
/// this crate produces.
fn bareiss_echelon(m: &ExactMatrix) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| integer_row(m.row(r)))
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut top = 0usize;
    for col in 0..m.cols {
        if top >= rows.len() {
            break;
        }
        let candidate = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r].iter().filter(|c| !c.is_zero()).count());
        let Some(p) = candidate else { continue };
        rows.swap(top, p);
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        let pv = &pivot_row[col];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for c in col..m.cols {
                // Bareiss step: (pv * a - lead * b) / prev is exact.
                let v = pv * &row[c] - &lead * &pivot_row[c];
                row[c] = v / &prev;
            }
        }
        prev = pv.clone();
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}

struct Rref {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Rref {
    fn from_echelon(ech: Echelon, cols: usize) -> Self {
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .into_iter()
            .zip(&ech.pivots)
            .map(|(row, &p)| {
                let lead = Rational::from(row[p].clone()).recip();
                row.into_iter().map(|c| Rational::from(c) * &lead).collect()
            })
            .collect();
        for i in (0..rows.len()).rev() {
            let p = ech.pivots[i];
            let (above, rest) = rows.split_at_mut(i);
            let pr = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let f = row[p].clone();
                for c in p..cols {
                    if !pr[c].is_zero() {
                        row[c] -= &(&f * &pr[c]);
                    }
                }
            }
        }
        Rref {
            rows,
            pivots: ech.pivots,
        }
    }
}

/// A linear subspace of `Q^ambient`, stored as its reduced row echelon basis.
///
/// Two subspaces are equal exactly when their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(ExactMatrix::identity(ambient).row_vecs(), ambient)
    }

    /// Row-reduce an arbitrary spanning set.
    pub fn from_spanning(vectors: Vec<Vec<Rational>>, ambient: usize) -> Self {
        let m = ExactMatrix::from_rows(vectors, ambient);
        let rref = m.rref();
        Subspace {
            ambient,
            basis: rref.rows,
            pivots: rref.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (c, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    w[c] -= &(&f * x);
                }
            }
        }
        w.iter().all(Rational::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// A basis vector of `self` missing from `other`, if any.
    pub fn witness_outside(&self, other: &Subspace) -> Option<Vec<Rational>> {
        self.basis.iter().find(|v| !other.contains(v)).cloned()
    }

    /// Kernel of `m` restricted to this subspace.
    ///
    /// `columns_on_basis` must hold, for each basis vector `b`, the image `m·b`;
    /// the result is `{ Σ c_i b_i : Σ c_i m·b_i = 0 }`.
    pub fn restricted_kernel(&self, images: &ExactMatrix) -> (usize, Subspace) {
        assert_eq!(images.cols(), self.dim());
        let (rank, coeff_kernel) = images.rank_and_nullspace();
        let vectors = coeff_kernel
            .basis
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (ci, b) in c.iter().zip(&self.basis) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (vj, bj) in v.iter_mut().zip(b) {
                        if !bj.is_zero() {
                            *vj += &(ci * bj);
                        }
                    }
                }
                v
            })
            .collect();
        (rank, Subspace::from_spanning(vectors, self.ambient))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, ker) = ExactMatrix::identity(2).rank_and_nullspace();
        assert_eq!((rank, ker.dim()), (2, 0));
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let (rank, ker) = ExactMatrix::zeros(2, 3).rank_and_nullspace();
        assert_eq!((rank, ker.dim()), (0, 3));
        assert_eq!(ker, Subspace::full(3));
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let (rank, ker) = m.rank_and_nullspace();
        assert_eq!(rank, 1);
        assert_eq!(ker, Subspace::from_spanning(vec![q(&[2, -1])], 2));
        for v in ker.basis() {
            assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn rational_entries() {
        let m = ExactMatrix::from_rows(
            vec![
                vec![Rational::new(1, 2), Rational::new(1, 3), Rational::one()],
                vec![Rational::new(3, 2), Rational::one(), Rational::from(3)],
            ],
            3,
        );
        let (rank, ker) = m.rank_and_nullspace();
        assert_eq!(rank, 1);
        assert_eq!(ker.dim(), 2);
        for v in ker.basis() {
            assert!(m.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn spans_agree_regardless_of_generators() {
        let a = Subspace::from_spanning(vec![q(&[1, 1, 0]), q(&[0, 1, 1])], 3);
        let b = Subspace::from_spanning(vec![q(&[1, 2, 1]), q(&[1, 0, -1]), q(&[2, 2, 0])], 3);
        assert_eq!(a, b);
        assert!(a.contains(&q(&[3, 5, 2])));
        assert!(!a.contains(&q(&[1, 0, 0])));
        assert!(a.witness_outside(&Subspace::zero(3)).is_some());
    }

    #[test]
    fn restricted_kernel_on_a_plane() {
        // plane spanned by e1, e2 in Q^3; map (x,y,z) -> x - y
        let plane = Subspace::from_spanning(vec![q(&[1, 0, 0]), q(&[0, 1, 0])], 3);
        let m = ExactMatrix::from_ints(&[&[1, -1, 5]]);
        let images = ExactMatrix::from_rows(
            vec![plane
                .basis()
                .iter()
                .map(|b| m.mul_vec(b)[0].clone())
                .collect()],
            2,
        );
        let (rank, k) = plane.restricted_kernel(&images);
        assert_eq!(rank, 1);
        assert_eq!(k, Subspace::from_spanning(vec![q(&[1, 1, 0])], 3));
    }
}
