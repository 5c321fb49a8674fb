//! Seven-dimensional Eschenburg spaces and orbifolds `SU(3)//S^1_{p,q}`.
//!
//! The circle acts by `z . X = diag(z^p) X diag(z^q)^-1`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::AbelianGroup2;
use crate::weights::{Permutation3, Weight3};

/// Circle action with left weights `p` and right weights `q`, `sum p = sum q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CircleAction7 {
    p: Weight3,
    q: Weight3,
}

impl CircleAction7 {
    pub fn new(p: Weight3, q: Weight3) -> Result<Self> {
        if p.sum() != q.sum() {
            return Err(Error::SumMismatch {
                left_name: "p",
                right_name: "q",
                left: p.sum(),
                right: q.sum(),
            });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &Weight3 {
        &self.p
    }

    pub fn q(&self) -> &Weight3 {
        &self.q
    }

    /// The inverted presentation `E_{q,p}`.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// gcd of `p_i - q_sigma(i)`; zero means an infinite stabilizer.
    pub fn stabilizer_order(&self, sigma: Permutation3) -> i128 {
        let qs = sigma.apply(&self.q);
        let d1 = self.p[0] as i128 - qs[0] as i128;
        let d2 = self.p[1] as i128 - qs[1] as i128;
        d1.gcd(&d2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Validity7 {
    NotOrbifold,
    Orbifold,
    FreeManifold,
}

pub fn validate7(act: &CircleAction7) -> Validity7 {
    let orders: Vec<i128> = Permutation3::ALL
        .iter()
        .map(|&s| act.stabilizer_order(s))
        .collect();
    if orders.contains(&0) {
        Validity7::NotOrbifold
    } else if orders.iter().all(|&g| g == 1) {
        Validity7::FreeManifold
    } else {
        Validity7::Orbifold
    }
}

/// Orbifold group along the singular circle `C_sigma`: cyclic of order
/// `gcd(p1 - q_sigma(1), p2 - q_sigma(2))`.
pub fn gamma7(act: &CircleAction7, sigma: Permutation3) -> Result<AbelianGroup2> {
    match act.stabilizer_order(sigma) {
        0 => Err(Error::InfiniteStabilizer(format!("C_{sigma}"))),
        g => Ok(AbelianGroup2::cyclic(g)),
    }
}

fn segment_meets(lo: i64, hi: i64, x: i64, y: i64) -> bool {
    x.min(y) <= hi && x.max(y) >= lo
}

/// Positivity for the Cheeger deformation along the right U(2) block that
/// fixes coordinate `fixed` (0-based): the fixed `q` must avoid `[min p,
/// max p]` and the segment between the two block weights must miss it too.
pub fn positive7_block(act: &CircleAction7, fixed: usize) -> bool {
    assert!(fixed < 3, "block index out of range");
    let (lo, hi) = (act.p.min_entry(), act.p.max_entry());
    let others: Vec<i64> = (0..3).filter(|&i| i != fixed).map(|i| act.q[i]).collect();
    let qf = act.q[fixed];
    !(lo..=hi).contains(&qf) && !segment_meets(lo, hi, others[0], others[1])
}

/// Positivity for the distinguished block (upper-left U(2), third coordinate
/// fixed). This is the one-circle case of [`crate::curvature::flat_witness`].
pub fn positive7(act: &CircleAction7) -> bool {
    positive7_block(act, 2)
}

/// Positivity for some block: every `q_i` lies strictly outside
/// `[min p, max p]`.
pub fn positive7_any_block(act: &CircleAction7) -> bool {
    let (lo, hi) = (act.p.min_entry(), act.p.max_entry());
    act.q.0.iter().all(|qi| !(lo..=hi).contains(qi))
}

const PERMS: [Permutation3; 6] = Permutation3::ALL;

/// Almost-positivity chains `q1 < q2 = p1 < p2 <= p3 < q3` or
/// `q1 < p1 <= p2 < p3 = q2 < q3`, searched over both presentations and all
/// independent reorderings of `p` and `q`.
pub fn almost_positive7(act: &CircleAction7) -> Result<bool> {
    if validate7(act) == Validity7::NotOrbifold {
        return Err(Error::NotOrbifold(format!(
            "q = {} is a permutation of p = {}",
            act.q, act.p
        )));
    }
    let chain = |p: &Weight3, q: &Weight3| {
        let (p1, p2, p3) = (p[0], p[1], p[2]);
        let (q1, q2, q3) = (q[0], q[1], q[2]);
        (q1 < q2 && q2 == p1 && p1 < p2 && p2 <= p3 && p3 < q3)
            || (q1 < p1 && p1 <= p2 && p2 < p3 && p3 == q2 && q2 < q3)
    };
    for (p, q) in [(act.p, act.q), (act.q, act.p)] {
        for s in PERMS {
            for t in PERMS {
                if chain(&s.apply(&p), &t.apply(&q)) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Recognizes the cohomogeneity-one family `E_d = E_{(1,1,d),(0,0,d+2)}`
/// up to shift, rational rescaling, inversion and reordering; returns `d`.
pub fn cohom1_match(act: &CircleAction7) -> Option<i64> {
    let mut best: Option<i64> = None;
    for (p, q) in [(act.p, act.q), (act.q, act.p)] {
        for single_p in 0..3 {
            let pair_p: Vec<i64> = (0..3).filter(|&i| i != single_p).map(|i| p[i]).collect();
            if pair_p[0] != pair_p[1] {
                continue;
            }
            let (x, y) = (pair_p[0] as i128, p[single_p] as i128);
            for single_q in 0..3 {
                let pair_q: Vec<i64> =
                    (0..3).filter(|&i| i != single_q).map(|i| q[i]).collect();
                if pair_q[0] != pair_q[1] {
                    continue;
                }
                let (u, v) = (pair_q[0] as i128, q[single_q] as i128);
                // lambda (x - u) = 1, lambda (y - u) = d, lambda (v - u) = d + 2
                let scale = x - u;
                if scale == 0 || (y - u) % scale != 0 || (v - u) % scale != 0 {
                    continue;
                }
                let d = (y - u) / scale;
                if d < 0 || (v - u) / scale != d + 2 {
                    continue;
                }
                let d = d as i64;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
    }
    best
}
