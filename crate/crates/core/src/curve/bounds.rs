use serde::Serialize;

use super::Curve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub genus: usize,
    pub k: usize,
    /// `3g - 3 - floor(n2 / 2)`
    pub geodesic: i64,
    /// `floor((8g - 8) / 3)`, only for `r2 = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specialized: Option<i64>,
    /// Lower bound for the rank of `mu_{2k}`, present for `2 <= k <= floor(n2 / 2)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu2k_lower: Option<i64>,
}

pub fn dimension_bounds(c: &Curve, k: usize) -> BoundsReport {
    let g = c.genus() as i64;
    let (n1, n2) = (c.n1() as i64, c.n2() as i64);
    let ki = k as i64;
    let mu2k_lower = (k >= 2 && ki <= n2 / 2).then(|| {
        if ki <= n1 / 2 {
            2 * g - 8 * ki - 2
        } else {
            2 * n2 - 4 * ki + 1
        }
    });
    BoundsReport {
        genus: c.genus(),
        k,
        geodesic: 3 * g - 3 - n2 / 2,
        specialized: (c.r2() == 0).then(|| (8 * g - 8).div_euclid(3)),
        mu2k_lower,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;
    use crate::exact::Rational;

    fn genus16() -> Curve {
        build_curve((0..18).map(Rational::from).collect(), vec![1; 18]).unwrap()
    }

    #[test]
    fn genus_sixteen_bounds() {
        let c = genus16();
        let b = dimension_bounds(&c, 2);
        assert_eq!(b.geodesic, 40);
        assert_eq!(b.specialized, Some(40));
        assert_eq!(b.mu2k_lower, Some(14));
        assert_eq!(dimension_bounds(&c, 3).mu2k_lower, Some(9));
        assert_eq!(dimension_bounds(&c, 1).mu2k_lower, None);
        assert_eq!(dimension_bounds(&c, 6).mu2k_lower, None);
    }

    #[test]
    fn json_keys() {
        let c = build_curve((0..12).map(Rational::from).collect(), [vec![1; 6], vec![2; 6]].concat()).unwrap();
        let v = serde_json::to_value(dimension_bounds(&c, 1)).unwrap();
        assert!(v.get("specialized").is_none());
        assert!(v.get("mu2k_lower").is_none());
        assert_eq!(v["geodesic"], 3 * 10 - 3 - 2);
    }
}
