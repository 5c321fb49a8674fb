//! Exact integer and rational kernels.
//!
//! Everything here is arbitrary precision. A relation matrix with two
//! columns describes a closed subgroup of the 2-torus: the row `(m1, m2)`
//! imposes `z^m1 w^m2 = 1`. The subgroup is `Z_d1 + Z_d2` where `d1 | d2`
//! are the invariant factors of the matrix, and a zero factor stands for a
//! circle.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Integer relation matrix with exactly two columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<[BigInt; 2]>,
}

impl IntMatrix {
    pub fn new(rows: Vec<[BigInt; 2]>) -> Self {
        Self { rows }
    }

    pub fn from_i64(rows: &[[i64; 2]]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|r| [BigInt::from(r[0]), BigInt::from(r[1])])
                .collect(),
        }
    }

    pub fn rows(&self) -> &[[BigInt; 2]] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        IntMatrix { rows }
    }

    /// gcd of all entries (0 for the zero matrix).
    pub fn entry_gcd(&self) -> BigInt {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// gcd of all 2x2 minors (0 when the rank is below 2).
    pub fn minor_gcd(&self) -> BigInt {
        let mut g = BigInt::zero();
        for i in 0..self.rows.len() {
            for j in (i + 1)..self.rows.len() {
                let (a, b) = (&self.rows[i], &self.rows[j]);
                let det = &a[0] * &b[1] - &a[1] * &b[0];
                g = g.gcd(&det);
            }
        }
        g
    }
}

fn fmt_big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Finitely generated subgroup `Z_d1 + Z_d2` of the 2-torus.
///
/// `d1 | d2` whenever both are nonzero. `(1, 1)` is the trivial group and a
/// zero entry is a circle factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroup2 {
    #[serde(serialize_with = "fmt_big")]
    d1: BigInt,
    #[serde(serialize_with = "fmt_big")]
    d2: BigInt,
}

impl AbelianGroup2 {
    /// Builds `Z_d1 + Z_d2` from arbitrary nonnegative factors, reducing them
    /// to invariant-factor form.
    pub fn new(d1: impl Into<BigInt>, d2: impl Into<BigInt>) -> Self {
        let (a, b) = (d1.into().abs(), d2.into().abs());
        // Z_a + Z_b = Z_gcd + Z_lcm; a zero factor is a circle.
        let (lo, hi) = if a.is_zero() || b.is_zero() {
            let nz = if a.is_zero() { b } else { a };
            if nz.is_zero() {
                (BigInt::zero(), BigInt::zero())
            } else {
                (nz, BigInt::zero())
            }
        } else {
            (a.gcd(&b), a.lcm(&b))
        };
        Self { d1: lo, d2: hi }
    }

    pub fn trivial() -> Self {
        Self::new(1, 1)
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::new(1, n)
    }

    pub fn d1(&self) -> &BigInt {
        &self.d1
    }

    pub fn d2(&self) -> &BigInt {
        &self.d2
    }

    pub fn is_finite(&self) -> bool {
        !self.d2.is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.d1.is_one() && self.d2.is_one()
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_finite() && self.d1.is_one()
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| &self.d1 * &self.d2)
    }

    /// Largest element order, `None` for infinite groups.
    pub fn exponent(&self) -> Option<&BigInt> {
        self.is_finite().then_some(&self.d2)
    }

    /// Number of elements killed by `n`.
    pub fn torsion_count(&self, n: &BigInt) -> BigInt {
        let part = |d: &BigInt| if d.is_zero() { n.clone() } else { d.gcd(n) };
        part(&self.d1) * part(&self.d2)
    }
}

impl fmt::Display for AbelianGroup2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |d: &BigInt| {
            if d.is_zero() {
                "S1".to_string()
            } else {
                format!("Z{d}")
            }
        };
        if self.is_trivial() {
            write!(f, "1")
        } else if self.d1.is_one() {
            write!(f, "{}", factor(&self.d2))
        } else {
            write!(f, "{}+{}", factor(&self.d1), factor(&self.d2))
        }
    }
}

/// Smith form of a two-column matrix together with the column transform.
///
/// `V` is unimodular and `M V = U^-1 diag(d1, d2)` for some unimodular `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf2 {
    pub d1: BigInt,
    pub d2: BigInt,
    pub col_transform: [[BigInt; 2]; 2],
}

/// Invariant factors `(d1, d2)` of a two-column matrix.
pub fn snf2(m: &IntMatrix) -> (BigInt, BigInt) {
    let s = snf2_with_transform(m);
    (s.d1, s.d2)
}

/// Two-column Smith normal form by row and column elimination, tracking the
/// column operations.
pub fn snf2_with_transform(m: &IntMatrix) -> Snf2 {
    let mut a: Vec<[BigInt; 2]> = m.rows.clone();
    let mut v = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    let swap_cols = |a: &mut Vec<[BigInt; 2]>, v: &mut [[BigInt; 2]; 2]| {
        for r in a.iter_mut() {
            r.swap(0, 1);
        }
        for r in v.iter_mut() {
            r.swap(0, 1);
        }
    };

    loop {
        // pivot: smallest nonzero magnitude
        let pivot = a
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i, j, x)))
            .filter(|(_, _, x)| !x.is_zero())
            .min_by(|x, y| x.2.abs().cmp(&y.2.abs()))
            .map(|(i, j, _)| (i, j));
        let Some((pi, pj)) = pivot else {
            return Snf2 {
                d1: BigInt::zero(),
                d2: BigInt::zero(),
                col_transform: v,
            };
        };
        a.swap(0, pi);
        if pj == 1 {
            swap_cols(&mut a, &mut v);
        }

        let mut clean = true;
        let p = a[0][0].clone();
        for i in 1..a.len() {
            let q = a[i][0].div_floor(&p);
            if !q.is_zero() {
                let row0 = a[0].clone();
                a[i][0] -= &q * &row0[0];
                a[i][1] -= &q * &row0[1];
            }
            if !a[i][0].is_zero() {
                clean = false;
            }
        }
        let q = a[0][1].div_floor(&p);
        if !q.is_zero() {
            for r in a.iter_mut() {
                let c0 = r[0].clone();
                r[1] -= &q * c0;
            }
            let (v00, v10) = (v[0][0].clone(), v[1][0].clone());
            v[0][1] -= &q * v00;
            v[1][1] -= &q * v10;
        }
        if !a[0][1].is_zero() {
            clean = false;
        }
        if !clean {
            continue;
        }
        // pivot isolated; it must divide the rest of the second column
        if let Some(i) = (1..a.len()).find(|&i| !a[i][1].is_multiple_of(&p)) {
            let ri = a[i].clone();
            a[0][0] += &ri[0];
            a[0][1] += &ri[1];
            continue;
        }
        let d2 = a[1..].iter().fold(BigInt::zero(), |g, r| g.gcd(&r[1]));
        return Snf2 {
            d1: p.abs(),
            d2,
            col_transform: v,
        };
    }
}

/// The subgroup `{(z, w) : z^m_i1 w^m_i2 = 1 for all rows i}` of the 2-torus.
pub fn kernel_group(m: &IntMatrix) -> AbelianGroup2 {
    let (d1, d2) = snf2(m);
    AbelianGroup2 { d1, d2 }
}

/// Exact point of `[0,1] x Delta^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalWitness {
    pub t: BigRational,
    pub eta: [BigRational; 3],
}

impl RationalWitness {
    fn in_domain(&self) -> bool {
        let zero = BigRational::zero();
        let one = BigRational::one();
        self.t >= zero
            && self.t <= one
            && self.eta.iter().all(|e| *e >= zero)
            && self.eta.iter().sum::<BigRational>() == one
    }

    fn key(&self) -> [&BigRational; 4] {
        [&self.t, &self.eta[0], &self.eta[1], &self.eta[2]]
    }
}

/// `coeffs . (t, eta1, eta2, eta3) = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEq {
    pub coeffs: [BigRational; 4],
    pub rhs: BigRational,
}

impl AffineEq {
    pub fn new(coeffs: [BigRational; 4], rhs: BigRational) -> Self {
        Self { coeffs, rhs }
    }

    pub fn from_i64(coeffs: [i64; 4], rhs: i64) -> Self {
        Self {
            coeffs: coeffs.map(|c| BigRational::from_integer(c.into())),
            rhs: BigRational::from_integer(rhs.into()),
        }
    }

    pub fn holds(&self, w: &RationalWitness) -> bool {
        let lhs = &self.coeffs[0] * &w.t
            + &self.coeffs[1] * &w.eta[0]
            + &self.coeffs[2] * &w.eta[1]
            + &self.coeffs[3] * &w.eta[2];
        lhs == self.rhs
    }
}

/// Decides whether the equalities have a solution with `t in [0,1]` and
/// `eta` in the standard simplex.
///
/// With the slack `s = 1 - t` the domain is `{x >= 0 : t + s = 1,
/// sum eta = 1}` in five variables, so a nonempty feasible set has a vertex,
/// and every vertex is the unique solution supported on some set of
/// linearly independent columns. All 32 supports are tried; the reported
/// witness is the lexicographically smallest `(t, eta1, eta2, eta3)` among
/// the vertices, which is also the lexicographic minimum of the whole
/// feasible set.
pub fn feasibility(eqs: &[AffineEq]) -> Option<RationalWitness> {
    let one = BigRational::one();
    let zero = BigRational::zero();
    // columns: t, s, eta1, eta2, eta3
    let mut rows: Vec<([BigRational; 5], BigRational)> = vec![
        (
            [one.clone(), one.clone(), zero.clone(), zero.clone(), zero.clone()],
            one.clone(),
        ),
        (
            [zero.clone(), zero.clone(), one.clone(), one.clone(), one.clone()],
            one.clone(),
        ),
    ];
    for e in eqs {
        rows.push((
            [
                e.coeffs[0].clone(),
                zero.clone(),
                e.coeffs[1].clone(),
                e.coeffs[2].clone(),
                e.coeffs[3].clone(),
            ],
            e.rhs.clone(),
        ));
    }

    let mut best: Option<RationalWitness> = None;
    for mask in 1u32..32 {
        let support: Vec<usize> = (0..5).filter(|j| mask & (1 << j) != 0).collect();
        let Some(sol) = solve_unique(&rows, &support) else {
            continue;
        };
        if sol.iter().any(|x| x.is_negative()) {
            continue;
        }
        let mut x = vec![zero.clone(); 5];
        for (k, &j) in support.iter().enumerate() {
            x[j] = sol[k].clone();
        }
        let w = RationalWitness {
            t: x[0].clone(),
            eta: [x[2].clone(), x[3].clone(), x[4].clone()],
        };
        debug_assert!(w.in_domain());
        debug_assert!(eqs.iter().all(|e| e.holds(&w)));
        let better = match &best {
            None => true,
            Some(b) => w.key().cmp(&b.key()) == Ordering::Less,
        };
        if better {
            best = Some(w);
        }
    }
    best
}

/// Solves the system restricted to the given columns; `None` unless the
/// system is consistent with a unique solution.
fn solve_unique(
    rows: &[([BigRational; 5], BigRational)],
    cols: &[usize],
) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let mut aug: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(r, b)| {
            let mut v: Vec<BigRational> = cols.iter().map(|&j| r[j].clone()).collect();
            v.push(b.clone());
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
            return None; // dependent columns
        };
        aug.swap(rank, p);
        let inv = aug[rank][c].recip();
        for x in aug[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..aug.len() {
            if i != rank && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for k in 0..=n {
                    let delta = &f * &aug[rank][k];
                    aug[i][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    if aug[rank..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(aug[..n].iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn snf2_examples() {
        let big = |a: i64, b: i64| (BigInt::from(a), BigInt::from(b));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[1, 0], [0, 1]])), big(1, 1));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[-2, -2], [-2, -4]])), big(2, 2));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[2, 0], [0, 3]])), big(1, 6));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[0, 0]])), big(0, 0));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[4, 6]])), big(2, 0));
        assert_eq!(snf2(&IntMatrix::from_i64(&[[0, 6], [0, 4]])), big(2, 0));
    }

    #[test]
    fn snf2_transform_diagonalizes() {
        let m = IntMatrix::from_i64(&[[6, 4], [10, 14], [-2, 8]]);
        let s = snf2_with_transform(&m);
        let v = &s.col_transform;
        let det = &v[0][0] * &v[1][1] - &v[0][1] * &v[1][0];
        assert_eq!(det.abs(), BigInt::one());
        // columns of M V: first divisible by d1, second by d2
        for r in m.rows() {
            let c0 = &r[0] * &v[0][0] + &r[1] * &v[1][0];
            let c1 = &r[0] * &v[0][1] + &r[1] * &v[1][1];
            assert!(c0.is_multiple_of(&s.d1));
            assert!(c1.is_multiple_of(&s.d2));
        }
    }

    #[test]
    fn kernel_group_examples() {
        let g = kernel_group(&IntMatrix::from_i64(&[[-2, -2], [-2, -4]]));
        assert_eq!(g, AbelianGroup2::new(2, 2));
        assert!(!g.is_cyclic());
        assert!(kernel_group(&IntMatrix::from_i64(&[[1, 0], [0, 1]])).is_trivial());
        let inf = kernel_group(&IntMatrix::from_i64(&[[1, 1]]));
        assert!(!inf.is_finite());
        assert_eq!(inf.d2(), &BigInt::zero());
    }

    #[test]
    fn group_normalization() {
        assert_eq!(AbelianGroup2::new(4, 6), AbelianGroup2::new(2, 12));
        assert_eq!(AbelianGroup2::new(3, 0), AbelianGroup2::new(0, 3));
        assert_eq!(AbelianGroup2::cyclic(6).to_string(), "Z6");
        assert_eq!(AbelianGroup2::new(2, 2).to_string(), "Z2+Z2");
        assert_eq!(AbelianGroup2::trivial().order(), Some(BigInt::one()));
    }

    #[test]
    fn feasibility_trivial_system() {
        let w = feasibility(&[AffineEq::from_i64([0, 0, 0, 0], 0)]).unwrap();
        assert_eq!(w.t, q(0, 1));
        assert_eq!(w.eta, [q(0, 1), q(0, 1), q(1, 1)]);
        assert!(w.in_domain());
    }

    #[test]
    fn feasibility_inconsistent_system() {
        assert!(feasibility(&[AffineEq::from_i64([0, 0, 0, 0], 1)]).is_none());
        // t = 2 is outside [0, 1]
        assert!(feasibility(&[AffineEq::from_i64([1, 0, 0, 0], 2)]).is_none());
        // eta1 = -1
        assert!(feasibility(&[AffineEq::from_i64([0, 1, 0, 0], -1)]).is_none());
    }

    #[test]
    fn feasibility_unique_interior_point() {
        // t = 1/3, eta1 = eta2 = eta3
        let eqs = [
            AffineEq::from_i64([3, 0, 0, 0], 1),
            AffineEq::from_i64([0, 1, -1, 0], 0),
            AffineEq::from_i64([0, 0, 1, -1], 0),
        ];
        let w = feasibility(&eqs).unwrap();
        assert_eq!(w.t, q(1, 3));
        assert_eq!(w.eta, [q(1, 3), q(1, 3), q(1, 3)]);
    }
}
