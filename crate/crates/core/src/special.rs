//! The remaining quotient families: weighted projective planes
//! `SU(3)//(SU(2) x S^1)`, circle quotients of the Wu manifold
//! `SU(3)/SO(3)`, and the five-dimensional `SU(3)//SU(2)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// `CP^2[w0, w1, w2]` with positive weights, gcd 1, sorted descending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedCP {
    pub weights: [i64; 3],
}

/// The quotient of `SU(3)` by `SU(2) x S^1_{p,q,r}` is
/// `CP^2[q+r, p+r, p+q]`.
pub fn weighted_cp(p: i64, q: i64, r: i64) -> Result<WeightedCP> {
    for (name, s) in [("q+r", q + r), ("p+r", p + r), ("p+q", p + q)] {
        if s == 0 {
            return Err(Error::ZeroWeight(name));
        }
    }
    let g = p.gcd(&q).gcd(&r);
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    let mut w = [(q + r).abs(), (p + r).abs(), (p + q).abs()];
    let h = w[0].gcd(&w[1]).gcd(&w[2]);
    for x in w.iter_mut() {
        *x /= h;
    }
    w.sort_unstable_by(|a, b| b.cmp(a));
    Ok(WeightedCP { weights: w })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rp2Stratum {
    pub generic_group: i64,
    pub distinguished_point_order: i64,
    /// The distinguished point has a strictly larger group than the rest of
    /// the `RP^2`.
    pub larger: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WuReport {
    pub p: i64,
    pub q: i64,
    pub valid: bool,
    pub isolated_points: Vec<i64>,
    pub rp2: Option<Rp2Stratum>,
}

/// Singular locus of `S^1_{p,q} \ SU(3) / SO(3)` for `p >= q >= 0`,
/// `gcd(p, q) = 1`. The candidate orders are `p, q, p+q`; the even one sits
/// on the singular `RP^2`, the odd ones above 1 are isolated points.
pub fn wu_quotient(p: i64, q: i64) -> Result<WuReport> {
    if !(p >= q && q >= 0) {
        return Err(Error::InvalidNormalization { p, q });
    }
    let g = p.gcd(&q);
    if g != 1 {
        return Err(Error::NotCoprime(g));
    }
    let valid = q > 0;
    if !valid {
        return Ok(WuReport {
            p,
            q,
            valid,
            isolated_points: Vec::new(),
            rp2: None,
        });
    }
    let orders = [p, q, p + q];
    let evens: Vec<i64> = orders.iter().copied().filter(|n| n % 2 == 0).collect();
    if evens.len() != 1 {
        return Err(Error::CertificateFailure(format!(
            "expected exactly one even order among {orders:?}"
        )));
    }
    let even = evens[0];
    let isolated_points = orders.iter().copied().filter(|&n| n % 2 == 1 && n > 1).collect();
    Ok(WuReport {
        p,
        q,
        valid,
        isolated_points,
        rp2: Some(Rp2Stratum {
            generic_group: 2,
            distinguished_point_order: even,
            larger: even != 2,
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct O5Descriptor {
    pub locus: &'static str,
    pub locus_dimension: u8,
    pub group_order: u8,
    pub normal_link: &'static str,
}

/// `SU(3)//SU(2)`: singular locus a closed geodesic with `Z_3`
/// isotropy; the normal space of directions is `S^3/Z_3 = L(3;1)`.
pub fn o5_descriptor() -> O5Descriptor {
    O5Descriptor {
        locus: "circle",
        locus_dimension: 1,
        group_order: 3,
        normal_link: "L(3;1)",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_cp(1, 1, 1).unwrap().weights, [1, 1, 1]);
        assert_eq!(weighted_cp(1, 1, 3).unwrap().weights, [2, 2, 1]);
        assert_eq!(weighted_cp(1, 1, -1), Err(Error::ZeroWeight("q+r")));
        assert_eq!(weighted_cp(2, 4, 6), Err(Error::NotPrimitive(2)));
    }

    #[test]
    fn wu_examples() {
        let r = wu_quotient(2, 1).unwrap();
        assert_eq!(r.isolated_points, vec![3]);
        assert_eq!(r.rp2.unwrap().distinguished_point_order, 2);
        assert!(!r.rp2.unwrap().larger);

        let r = wu_quotient(1, 1).unwrap();
        assert!(r.isolated_points.is_empty());
        assert_eq!(r.rp2.unwrap().distinguished_point_order, 2);

        let r = wu_quotient(3, 1).unwrap();
        assert_eq!(r.isolated_points, vec![3]);
        assert_eq!(r.rp2.unwrap().distinguished_point_order, 4);
        assert!(r.rp2.unwrap().larger);

        let r = wu_quotient(1, 0).unwrap();
        assert!(!r.valid && r.rp2.is_none());

        assert!(matches!(wu_quotient(1, 2), Err(Error::InvalidNormalization { .. })));
        assert_eq!(wu_quotient(4, 2), Err(Error::NotCoprime(2)));
    }

    #[test]
    fn o5_constants() {
        let d = o5_descriptor();
        assert_eq!((d.group_order, d.locus_dimension, d.normal_link), (3, 1, "L(3;1)"));
    }
}
