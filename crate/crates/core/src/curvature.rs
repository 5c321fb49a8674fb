//! Positive curvature of `SU(3)//T^2` under the Cheeger deformation along
//! the upper-left `U(2)`, and the search for a positively curved circle
//! `E_{lambda p + mu a, lambda q + mu b}` submersing onto it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::eschenburg6::{validate6, TorusAction6, Validity6};
use crate::eschenburg7::{positive7, CircleAction7};
use crate::error::{Error, Result};
use crate::lattice::{feasibility, AffineEq};
use crate::moves::{apply_all, integer_reparametrization, EquivalenceMove};
use crate::weights::{Permutation3, Weight3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlatCondition {
    /// `Ad(k) Y_1` horizontal: `(1-t) b1 + t b2 = sum eta a` and the same
    /// for `q, p`.
    Condition1,
    /// `Y_3` horizontal: `b3 = sum eta a` and `q3 = sum eta p`.
    Condition2,
}

fn ser_opt_rational<S: Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

fn ser_eta<S: Serializer>(x: &[BigRational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for v in x {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

/// Exact point at which one of the two positivity conditions fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatWitness {
    pub kind: FlatCondition,
    #[serde(serialize_with = "ser_opt_rational")]
    pub t: Option<BigRational>,
    #[serde(serialize_with = "ser_eta")]
    pub eta: [BigRational; 3],
}

impl FlatWitness {
    /// Re-substitutes the witness into its defining equalities.
    pub fn verify(&self, act: &TorusAction6) -> bool {
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        if self.eta.iter().any(|e| *e < zero) || self.eta.iter().sum::<BigRational>() != one {
            return false;
        }
        let r = |x: i64| BigRational::from_integer(x.into());
        let dot = |w: &Weight3| -> BigRational { (0..3).map(|i| &self.eta[i] * r(w[i])).sum() };
        match self.kind {
            FlatCondition::Condition1 => {
                let Some(t) = &self.t else { return false };
                if *t < zero || *t > one {
                    return false;
                }
                let s = &one - t;
                let lhs_b = &s * r(act.b()[0]) + t * r(act.b()[1]);
                let lhs_q = &s * r(act.q()[0]) + t * r(act.q()[1]);
                lhs_b == dot(act.a()) && lhs_q == dot(act.p())
            }
            FlatCondition::Condition2 => {
                self.t.is_none() && r(act.b()[2]) == dot(act.a()) && r(act.q()[2]) == dot(act.p())
            }
        }
    }
}

fn condition1_eq(left: &Weight3, right: &Weight3) -> AffineEq {
    // t (r2 - r1) - sum eta l = -r1
    AffineEq::from_i64([right[1] - right[0], -left[0], -left[1], -left[2]], -right[0])
}

fn condition2_eq(left: &Weight3, right: &Weight3) -> AffineEq {
    AffineEq::from_i64([0, left[0], left[1], left[2]], right[2])
}

/// Exact decision of positive curvature under the distinguished-block
/// deformation: `None` iff positively curved.
pub fn flat_witness(act: &TorusAction6) -> Result<Option<FlatWitness>> {
    if validate6(act) == Validity6::NotOrbifold {
        return Err(Error::NotOrbifold(crate::eschenburg6::describe(act)));
    }
    let c1 = [condition1_eq(act.a(), act.b()), condition1_eq(act.p(), act.q())];
    if let Some(w) = feasibility(&c1) {
        return Ok(Some(FlatWitness {
            kind: FlatCondition::Condition1,
            t: Some(w.t),
            eta: w.eta,
        }));
    }
    let c2 = [condition2_eq(act.a(), act.b()), condition2_eq(act.p(), act.q())];
    // t is free in condition 2; the feasibility solver pins it at 0
    Ok(feasibility(&c2).map(|w| FlatWitness {
        kind: FlatCondition::Condition2,
        t: None,
        eta: w.eta,
    }))
}

/// The same test for the block fixing coordinate `fixed` (0-based): all four
/// weight vectors are permuted jointly so that `fixed` moves to the third
/// slot.
pub fn flat_witness_block(act: &TorusAction6, fixed: usize) -> Result<Option<FlatWitness>> {
    let sigma = match fixed {
        0 => Permutation3::P13,
        1 => Permutation3::P23,
        2 => Permutation3::ID,
        _ => return Err(Error::InvalidArgument(format!("block index {fixed} out of range"))),
    };
    let moved = apply_all(act, &[EquivalenceMove::Permute { sigma, tau: sigma }])?;
    flat_witness(&moved)
}

/// Coprime pair `(lambda, mu)` naming the circle `lambda (p,q) + mu (a,b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CircleCombo {
    pub lambda: i64,
    pub mu: i64,
}

impl CircleCombo {
    pub fn new(lambda: i64, mu: i64) -> Result<Self> {
        if lambda.gcd(&mu) != 1 {
            return Err(Error::InvalidArgument(format!(
                "({lambda}, {mu}) is not a coprime pair"
            )));
        }
        Ok(Self { lambda, mu })
    }

    /// `(lambda p + mu a, lambda q + mu b)`.
    pub fn circle(&self, act: &TorusAction6) -> Result<CircleAction7> {
        let u = Weight3::combine(self.lambda, act.p(), self.mu, act.a())?;
        let v = Weight3::combine(self.lambda, act.q(), self.mu, act.b())?;
        CircleAction7::new(u, v)
    }

    /// Search order: by `max(|lambda|, |mu|)`, then positive, zero and
    /// negative `lambda` in turn, then `|lambda|`, then `mu`.
    fn key(&self) -> (i64, u8, i64, i64) {
        let sign = match self.lambda.signum() {
            1 => 0,
            0 => 1,
            _ => 2,
        };
        (
            self.lambda.abs().max(self.mu.abs()),
            sign,
            self.lambda.abs(),
            self.mu,
        )
    }
}

/// Outcome of [`find_circle`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CircleSearch {
    Found(CircleCombo),
    /// The quotient is not positively curved, so no circle can be.
    ProvablyNone(FlatWitness),
}

pub const DEFAULT_CIRCLE_BOUND: u32 = 100;

/// Circles of height exactly `m`, one per pair `+-(lambda, mu)`, sorted.
fn shell(m: i64) -> Vec<CircleCombo> {
    let mut out = Vec::new();
    for lambda in -m..=m {
        for mu in 0..=m {
            if lambda.abs().max(mu) != m || lambda.gcd(&mu) != 1 {
                continue;
            }
            if mu == 0 && lambda != 1 {
                continue;
            }
            out.push(CircleCombo { lambda, mu });
        }
    }
    out.sort_by_key(CircleCombo::key);
    out
}

/// First circle in the search order with `positive7`, up to `bound`.
pub fn find_circle(act: &TorusAction6, bound: u32) -> Result<CircleSearch> {
    if let Some(w) = flat_witness(act)? {
        return Ok(CircleSearch::ProvablyNone(w));
    }
    for m in 1..=bound as i64 {
        let cands = shell(m);
        let hit = cands
            .par_iter()
            .map(|c| c.circle(act).map(|e| positive7(&e)))
            .collect::<Result<Vec<bool>>>()?;
        if let Some(i) = hit.iter().position(|&h| h) {
            return Ok(CircleSearch::Found(cands[i]));
        }
    }
    Err(Error::ExhaustedBound(bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReparShape {
    /// `p' = (0,0,0)`
    AllZeroP,
    /// `p' = (0,n,0)`, `a' = (0,n,n)`
    BlockForm { n: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReparCase {
    pub shape: ReparShape,
    pub transformed: TorusAction6,
    pub moves: Vec<EquivalenceMove>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    }
}

/// Reparametrization (not necessarily effective) with `p' = 0` or with
/// `p' = (0,n,0)`, `a' = (0,n,n)`.
pub fn repar_normal_form(act: &TorusAction6) -> Result<ReparCase> {
    if validate6(act) == Validity6::NotOrbifold {
        return Err(Error::Degenerate(format!(
            "not an orbifold: {}",
            crate::eschenburg6::describe(act)
        )));
    }
    if *act.p() == Weight3::ZERO {
        return Ok(ReparCase {
            shape: ReparShape::AllZeroP,
            transformed: *act,
            moves: Vec::new(),
        });
    }
    let mut moves = Vec::new();
    if act.a()[0] != 0 || act.p()[0] != 0 {
        moves.push(EquivalenceMove::Shift {
            c: -act.a()[0],
            d: -act.p()[0],
        });
    }
    let g = apply_all(act, &moves)?;
    let (a, p) = (*g.a(), *g.p());
    let delta = a[1] as i128 * p[2] as i128 - a[2] as i128 * p[1] as i128;
    if delta == 0 {
        if p != Weight3::ZERO {
            // p and a lie on one line through the primitive vector v
            let pg = p[1].gcd(&p[2]);
            let v = [p[1] / pg, p[2] / pg];
            let big_a = if v[0] != 0 { a[1] / v[0] } else { a[2] / v[1] };
            let h = big_a.gcd(&pg);
            let (m, n) = (big_a / h, -pg / h);
            // m' m - n' n = 1
            let (x, y) = ext_gcd(m, n);
            let (m1, n1) = (x, -y);
            moves.push(EquivalenceMove::Gl2z([[m1, n1], [n, m]]));
        }
        let out = apply_all(act, &moves)?;
        if *out.p() != Weight3::ZERO {
            return Err(Error::CertificateFailure("p' did not vanish".into()));
        }
        return Ok(ReparCase {
            shape: ReparShape::AllZeroP,
            transformed: out,
            moves,
        });
    }
    let n = i64::try_from(delta.abs()).map_err(|_| Error::Overflow)?;
    let k = delta.signum() as i64;
    let l = -k;
    let r = [
        [k * p[2] + l * p[1], -(k * a[2] + l * a[1])],
        [k * p[2], -k * a[2]],
    ];
    moves.extend(integer_reparametrization(r)?);
    let out = apply_all(act, &moves)?;
    if *out.p() != Weight3::new(0, n, 0) || *out.a() != Weight3::new(0, n, n) {
        return Err(Error::CertificateFailure(format!(
            "block form not reached: {}",
            crate::eschenburg6::describe(&out)
        )));
    }
    Ok(ReparCase {
        shape: ReparShape::BlockForm { n },
        transformed: out,
        moves,
    })
}

/// Exact rational `n / d`, for callers building witnesses by hand.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
