//! Presentation changes that leave `SU(3)//T^2` unchanged.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::eschenburg6::TorusAction6;
use crate::error::{Error, Result};
use crate::weights::{Permutation3, Weight3};

/// One rewriting step of a torus action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceMove {
    /// `(a, b, p, q) -> (b, a, q, p)`
    Swap,
    /// `a, b` scaled by `lambda`, `p, q` by `mu`.
    Scale { lambda: Ratio<i64>, mu: Ratio<i64> },
    /// `a, b` shifted by `c`, `p, q` by `d`.
    Shift { c: i64, d: i64 },
    /// Left weights reordered by `sigma`, right weights by `tau`.
    Permute {
        sigma: Permutation3,
        tau: Permutation3,
    },
    /// `(a; p) -> M (a; p)` and `(b; q) -> M (b; q)` with `det M = +-1`.
    Gl2z([[i64; 2]; 2]),
}

impl EquivalenceMove {
    pub fn scale_int(lambda: i64, mu: i64) -> Self {
        Self::Scale {
            lambda: Ratio::from_integer(lambda),
            mu: Ratio::from_integer(mu),
        }
    }
}

impl fmt::Display for EquivalenceMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Swap => write!(f, "swap"),
            Self::Scale { lambda, mu } => write!(f, "scale({lambda},{mu})"),
            Self::Shift { c, d } => write!(f, "shift({c},{d})"),
            Self::Permute { sigma, tau } => write!(f, "permute({sigma},{tau})"),
            Self::Gl2z(m) => write!(
                f,
                "gl2z([[{},{}],[{},{}]])",
                m[0][0], m[0][1], m[1][0], m[1][1]
            ),
        }
    }
}

impl Serialize for EquivalenceMove {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn scale_weight(w: &Weight3, f: &Ratio<i64>) -> Result<Weight3> {
    let (num, den) = (*f.numer() as i128, *f.denom() as i128);
    let mut out = [0i64; 3];
    for i in 0..3 {
        let x = w[i] as i128 * num;
        if x % den != 0 {
            return Err(Error::NonIntegralScale(f.to_string()));
        }
        out[i] = i64::try_from(x / den).map_err(|_| Error::Overflow)?;
    }
    Ok(Weight3(out))
}

/// Applies one move, checking its legality.
pub fn apply_equivalence(act: &TorusAction6, m: &EquivalenceMove) -> Result<TorusAction6> {
    let (a, b, p, q) = (act.a(), act.b(), act.p(), act.q());
    let out = match m {
        EquivalenceMove::Swap => (*b, *a, *q, *p),
        EquivalenceMove::Scale { lambda, mu } => {
            if lambda.is_zero() || mu.is_zero() {
                return Err(Error::ZeroScale);
            }
            (
                scale_weight(a, lambda)?,
                scale_weight(b, lambda)?,
                scale_weight(p, mu)?,
                scale_weight(q, mu)?,
            )
        }
        EquivalenceMove::Shift { c, d } => {
            (a.shifted(*c)?, b.shifted(*c)?, p.shifted(*d)?, q.shifted(*d)?)
        }
        EquivalenceMove::Permute { sigma, tau } => {
            (sigma.apply(a), tau.apply(b), sigma.apply(p), tau.apply(q))
        }
        EquivalenceMove::Gl2z(mat) => {
            let det = mat[0][0] as i128 * mat[1][1] as i128 - mat[0][1] as i128 * mat[1][0] as i128;
            if det.abs() != 1 {
                return Err(Error::NotUnimodular(*mat));
            }
            (
                Weight3::combine(mat[0][0], a, mat[0][1], p)?,
                Weight3::combine(mat[0][0], b, mat[0][1], q)?,
                Weight3::combine(mat[1][0], a, mat[1][1], p)?,
                Weight3::combine(mat[1][0], b, mat[1][1], q)?,
            )
        }
    };
    TorusAction6::new(out.0, out.1, out.2, out.3)
}

/// Applies a sequence of moves left to right.
pub fn apply_all(act: &TorusAction6, moves: &[EquivalenceMove]) -> Result<TorusAction6> {
    moves.iter().try_fold(*act, |acc, m| apply_equivalence(&acc, m))
}

/// Moves realizing `(a; p) -> M (a; p)` for an integer matrix with nonzero
/// determinant, via `M = U^-1 diag(e1, e2) V^-1` with `U, V` unimodular.
pub fn integer_reparametrization(mat: [[i64; 2]; 2]) -> Result<Vec<EquivalenceMove>> {
    let m = mat.map(|r| r.map(|x| x as i128));
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det == 0 {
        return Err(Error::Degenerate("singular reparametrization".into()));
    }
    let (u_inv, diag, v_inv) = smith_2x2(m);
    let to64 = |x: [[i128; 2]; 2]| -> Result<[[i64; 2]; 2]> {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = i64::try_from(x[i][j]).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(out)
    };
    let mut moves = Vec::new();
    if v_inv != [[1, 0], [0, 1]] {
        moves.push(EquivalenceMove::Gl2z(to64(v_inv)?));
    }
    if diag != [1, 1] {
        let e1 = i64::try_from(diag[0]).map_err(|_| Error::Overflow)?;
        let e2 = i64::try_from(diag[1]).map_err(|_| Error::Overflow)?;
        moves.push(EquivalenceMove::scale_int(e1, e2));
    }
    if u_inv != [[1, 0], [0, 1]] {
        moves.push(EquivalenceMove::Gl2z(to64(u_inv)?));
    }
    Ok(moves)
}

type Mat2 = [[i128; 2]; 2];

fn mul(x: Mat2, y: Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// `M = L diag(e) R` with `L, R` unimodular and `e1 | e2` (signs folded into
/// `L`). Plain elimination on a 2x2 integer matrix of nonzero determinant.
fn smith_2x2(m: Mat2) -> (Mat2, [i128; 2], Mat2) {
    // invariant: m_orig = left * a * right
    let mut a = m;
    let mut left: Mat2 = [[1, 0], [0, 1]];
    let mut right: Mat2 = [[1, 0], [0, 1]];
    loop {
        // move the smallest nonzero entry to (0,0)
        let mut best = (0, 0);
        let mut best_abs = i128::MAX;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && a[i][j].abs() < best_abs {
                    best_abs = a[i][j].abs();
                    best = (i, j);
                }
            }
        }
        if best.0 == 1 {
            // a = P (P a), P = row swap; left <- left P
            a.swap(0, 1);
            left = mul(left, [[0, 1], [1, 0]]);
        }
        if best.1 == 1 {
            for r in a.iter_mut() {
                r.swap(0, 1);
            }
            right = mul([[0, 1], [1, 0]], right);
        }
        let p = a[0][0];
        // row op: row1 -= k row0 ; a = E^-1 (E a), left <- left E^-1
        let k = a[1][0].div_euclid(p);
        if k != 0 {
            a[1][0] -= k * a[0][0];
            a[1][1] -= k * a[0][1];
            left = mul(left, [[1, 0], [k, 1]]);
        }
        // col op: col1 -= k col0 ; right <- F^-1 right
        let k = a[0][1].div_euclid(p);
        if k != 0 {
            a[0][1] -= k * a[0][0];
            a[1][1] -= k * a[1][0];
            right = mul([[1, k], [0, 1]], right);
        }
        if a[1][0] != 0 || a[0][1] != 0 {
            continue;
        }
        if a[1][1] % p != 0 {
            // row0 += row1
            a[0][0] += a[1][0];
            a[0][1] += a[1][1];
            left = mul(left, [[1, 0], [-1, 1]]);
            continue;
        }
        // make the diagonal nonnegative by flipping rows
        for i in 0..2 {
            if a[i][i] < 0 {
                a[i][i] = -a[i][i];
                let mut flip = [[1, 0], [0, 1]];
                flip[i][i] = -1;
                left = mul(left, flip);
            }
        }
        return (left, [a[0][0], a[1][1]], right);
    }
}
