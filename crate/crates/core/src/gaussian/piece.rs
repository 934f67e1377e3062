use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// The three eigenspace pieces of `Λ² H⁰(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradedPiece {
    /// `Λ² W1`
    LL,
    /// `Λ² W2`
    MM,
    /// `W1 ⊗ W2`
    LM,
}

impl GradedPiece {
    pub const ALL: [GradedPiece; 3] = [GradedPiece::LL, GradedPiece::MM, GradedPiece::LM];

    pub fn name(self) -> &'static str {
        match self {
            GradedPiece::LL => "LL",
            GradedPiece::MM => "MM",
            GradedPiece::LM => "LM",
        }
    }

    /// Character of the cyclic action on the piece.
    pub fn character(self) -> u32 {
        match self {
            GradedPiece::LL => 2,
            GradedPiece::MM => 1,
            GradedPiece::LM => 0,
        }
    }

    /// Total power of `y^-1` carried by a product of two forms of the piece.
    pub fn y_power(self) -> u32 {
        match self {
            GradedPiece::LL => 2,
            GradedPiece::MM => 4,
            GradedPiece::LM => 3,
        }
    }

    /// Sizes of the two factors: `(n1, n1)`, `(n2, n2)` or `(n1, n2)`.
    pub fn factor_sizes(self, c: &Curve) -> (usize, usize) {
        match self {
            GradedPiece::LL => (c.n1(), c.n1()),
            GradedPiece::MM => (c.n2(), c.n2()),
            GradedPiece::LM => (c.n1(), c.n2()),
        }
    }

    /// Index pairs in lexicographic order: `i < j` for the wedge pieces,
    /// all `(i, j)` for the mixed piece. Indices start at 1.
    pub fn pairs(self, c: &Curve) -> Vec<(usize, usize)> {
        let (a, b) = self.factor_sizes(c);
        match self {
            GradedPiece::LM => (1..=a).flat_map(|i| (1..=b).map(move |j| (i, j))).collect(),
            _ => (1..=a).flat_map(|i| (i + 1..=b).map(move |j| (i, j))).collect(),
        }
    }

    pub fn dim(self, c: &Curve) -> usize {
        let (a, b) = self.factor_sizes(c);
        match self {
            GradedPiece::LM => a * b,
            _ => a * a.saturating_sub(1) / 2,
        }
    }

    pub fn contains_pair(self, c: &Curve, i: usize, j: usize) -> bool {
        let (a, b) = self.factor_sizes(c);
        let in_range = i >= 1 && j >= 1 && i <= a && j <= b;
        match self {
            GradedPiece::LM => in_range,
            _ => in_range && i < j,
        }
    }
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GradedPiece {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LL" => Ok(GradedPiece::LL),
            "MM" => Ok(GradedPiece::MM),
            "LM" => Ok(GradedPiece::LM),
            _ => Err(Error::InvalidArgument(format!("unknown piece {s:?} (expected LL, MM or LM)"))),
        }
    }
}

impl Serialize for GradedPiece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Sparse coefficients `a_ij` over one piece. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeVector {
    piece: GradedPiece,
    coeffs: BTreeMap<(usize, usize), Rational>,
}

impl WedgeVector {
    pub fn zero(piece: GradedPiece) -> Self {
        WedgeVector {
            piece,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `e_i ∧ e_j` (or `e_i ⊗ f_j`).
    pub fn basis(c: &Curve, piece: GradedPiece, i: usize, j: usize) -> Result<Self> {
        WedgeVector::zero(piece).with(c, i, j, Rational::one())
    }

    pub fn with(mut self, c: &Curve, i: usize, j: usize, value: Rational) -> Result<Self> {
        if !self.piece.contains_pair(c, i, j) {
            return Err(Error::IndexOutOfRange(i, j));
        }
        if value.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), value);
        }
        Ok(self)
    }

    /// Coefficients listed in the order of [`GradedPiece::pairs`].
    pub fn from_dense(c: &Curve, piece: GradedPiece, values: &[Rational]) -> Result<Self> {
        let pairs = piece.pairs(c);
        if pairs.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "piece {piece} has dimension {}, got {} coefficients",
                pairs.len(),
                values.len()
            )));
        }
        let coeffs = pairs
            .into_iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (p, v.clone()))
            .collect();
        Ok(WedgeVector { piece, coeffs })
    }

    pub fn to_dense(&self, c: &Curve) -> Vec<Rational> {
        self.piece
            .pairs(c)
            .into_iter()
            .map(|p| self.coeffs.get(&p).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn piece(&self) -> GradedPiece {
        self.piece
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Checks every stored pair against the curve's index set.
    pub fn validate(&self, c: &Curve) -> Result<()> {
        match self.coeffs.keys().find(|&&(i, j)| !self.piece.contains_pair(c, i, j)) {
            Some(&(i, j)) => Err(Error::IndexOutOfRange(i, j)),
            None => Ok(()),
        }
    }
}

impl Serialize for WedgeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for ((i, j), v) in &self.coeffs {
            m.serialize_entry(&format!("{i},{j}"), v)?;
        }
        m.end()
    }
}

/// Identifier of a basis quadric, written `PIECE:i:j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadricId {
    pub piece: GradedPiece,
    pub i: usize,
    pub j: usize,
}

impl QuadricId {
    pub fn new(piece: GradedPiece, i: usize, j: usize) -> Self {
        QuadricId { piece, i, j }
    }
}

impl fmt::Display for QuadricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.piece, self.i, self.j)
    }
}

impl FromStr for QuadricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad quadric id {s:?} (expected e.g. LM:1:1)"));
        let mut parts = s.split(':');
        let piece = parts.next().ok_or_else(bad)?.parse()?;
        let i = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let j = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(QuadricId { piece, i, j })
    }
}

impl Serialize for QuadricId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;

    fn curve18() -> Curve {
        build_curve((0..18).map(Rational::from).collect(), vec![1; 18]).unwrap()
    }

    #[test]
    fn index_sets() {
        let c = curve18();
        assert_eq!(GradedPiece::LL.pairs(&c).len(), 6);
        assert_eq!(GradedPiece::MM.dim(&c), 45);
        assert_eq!(GradedPiece::LM.dim(&c), 40);
        let total: usize = GradedPiece::ALL.iter().map(|p| p.dim(&c)).sum();
        assert_eq!(total, (c.genus() - 2) * (c.genus() - 3) / 2);
        assert_eq!(GradedPiece::LL.pairs(&c)[0], (1, 2));
        assert_eq!(GradedPiece::LM.pairs(&c)[1], (1, 2));
    }

    #[test]
    fn wedge_vector_round_trip() {
        let c = curve18();
        let v = WedgeVector::zero(GradedPiece::LL)
            .with(&c, 1, 4, Rational::new(3, 2))
            .unwrap()
            .with(&c, 2, 3, Rational::from(-1))
            .unwrap();
        let dense = v.to_dense(&c);
        assert_eq!(WedgeVector::from_dense(&c, GradedPiece::LL, &dense).unwrap(), v);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"1,4":"3/2","2,3":"-1"}"#);
        assert_eq!(
            WedgeVector::basis(&c, GradedPiece::LL, 2, 2),
            Err(Error::IndexOutOfRange(2, 2))
        );
        assert!(WedgeVector::basis(&c, GradedPiece::LM, 4, 10).is_ok());
    }

    #[test]
    fn quadric_ids() {
        let q: QuadricId = "lm:1:1".parse().unwrap();
        assert_eq!(q, QuadricId::new(GradedPiece::LM, 1, 1));
        assert_eq!(q.to_string(), "LM:1:1");
        assert!("MM:1".parse::<QuadricId>().is_err());
        assert!("XX:1:2".parse::<QuadricId>().is_err());
    }
}
