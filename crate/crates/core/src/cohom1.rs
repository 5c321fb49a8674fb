//! Circle actions on the cohomogeneity-one Eschenburg spaces
//! `E_d = E_{(1,1,d),(0,0,d+2)}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::eschenburg6::{
    gamma6, kernel_of_action, lgroup6, singular_report, SingularLocusReport, TorusAction6, EDGES,
};
use crate::error::{Error, Result};
use crate::moves::{apply_all, EquivalenceMove};
use crate::weights::{Permutation3 as P, Weight3};

/// `a = (alpha, beta, 0)`, `b = (gamma, delta, eps)` on `E_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cohom1Params {
    pub d: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl Cohom1Params {
    pub fn new(d: i64, alpha: i64, beta: i64, gamma: i64, delta: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::InvalidArgument(format!("d = {d} must be nonnegative")));
        }
        Ok(Self { d, alpha, beta, gamma, delta })
    }

    /// Shifts `a` so that `a_3 = 0`.
    pub fn from_weights(d: i64, a: &Weight3, b: &Weight3) -> Result<Self> {
        if a.sum() != b.sum() {
            return Err(Error::SumMismatch {
                left_name: "a",
                right_name: "b",
                left: a.sum(),
                right: b.sum(),
            });
        }
        let c = a[2];
        Self::new(d, a[0] - c, a[1] - c, b[0] - c, b[1] - c)
    }

    pub fn epsilon(&self) -> i64 {
        self.alpha + self.beta - self.gamma - self.delta
    }

    pub fn a(&self) -> Weight3 {
        Weight3::new(self.alpha, self.beta, 0)
    }

    pub fn b(&self) -> Weight3 {
        Weight3::new(self.gamma, self.delta, self.epsilon())
    }

    /// The torus action `(a, b, E_d)`.
    pub fn action(&self) -> TorusAction6 {
        TorusAction6::new(self.a(), self.b(), ed_p(self.d), ed_q(self.d))
            .expect("weights balanced by construction")
    }

    /// Vertex orders in the order id, (12), (13), (123), (132), (23).
    pub fn vertex_orders(&self) -> [i64; 6] {
        let (al, be, ga, de, d) = (self.alpha, self.beta, self.gamma, self.delta, self.d);
        [
            ((al - be) - (ga - de)).abs(),
            ((al - be) + (ga - de)).abs(),
            (ga + d * (be - de)).abs(),
            (ga + d * (al - de)).abs(),
            (de + d * (be - ga)).abs(),
            (de + d * (al - ga)).abs(),
        ]
    }

    /// Edge order of `L_ij` as the gcd of the two tabulated quantities.
    pub fn edge_order(&self, i: u8, j: u8) -> i64 {
        let (al, be, ga, de, d) = (self.alpha, self.beta, self.gamma, self.delta, self.d);
        let (x, y) = match (i, j) {
            (1, 1) => ((al - be) - (ga - de), de + d * (al - ga)),
            (1, 2) => ((al - be) + (ga - de), ga + d * (al - de)),
            (1, 3) => (de - ga, de + d * (be - ga)),
            (2, 1) => ((al - be) + (ga - de), de + d * (be - ga)),
            (2, 2) => ((al - be) - (ga - de), ga + d * (be - de)),
            (2, 3) => (de - ga, de + d * (al - ga)),
            (3, 1) => (al - be, ga + d * (al - de)),
            (3, 2) => (al - be, de + d * (al - ga)),
            (3, 3) => (al - be, ga - de),
            _ => panic!("edge indices range over 1..=3"),
        };
        x.gcd(&y)
    }
}

pub fn ed_p(d: i64) -> Weight3 {
    Weight3::new(1, 1, d)
}

pub fn ed_q(d: i64) -> Weight3 {
    Weight3::new(0, 0, d + 2)
}

/// Closed-form orbifold orders of a circle action on `E_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cohom1Tables {
    pub vertices: Vec<(P, i64)>,
    pub edges: Vec<(String, i64)>,
}

/// Tabulated vertex and edge orders, cross-checked against the lattice
/// computation on the assembled torus action.
pub fn cohom1_tables(params: &Cohom1Params) -> Result<Cohom1Tables> {
    let v = params.vertex_orders();
    if let Some(k) = v.iter().position(|&n| n == 0) {
        return Err(Error::NotOrbifold(format!(
            "N_{} = 0 for {params:?}",
            P::ALL[k]
        )));
    }
    let act = params.action();
    let mut vertices = Vec::with_capacity(6);
    for (s, &n) in P::ALL.iter().zip(&v) {
        let g = gamma6(&act, *s)?;
        if g.order() != Some(BigInt::from(n)) {
            return Err(Error::CertificateFailure(format!(
                "table order {n} at C_{s} disagrees with lattice group {g}"
            )));
        }
        vertices.push((*s, n));
    }
    let mut edges = Vec::with_capacity(9);
    for e in EDGES {
        let (i, j) = e.label;
        let n = params.edge_order(i, j);
        let g = lgroup6(&act, i, j)?;
        if g.order() != Some(BigInt::from(n)) {
            return Err(Error::CertificateFailure(format!(
                "table order {n} on L{i}{j} disagrees with lattice group {g}"
            )));
        }
        edges.push((format!("L{i}{j}"), n));
    }
    Ok(Cohom1Tables { vertices, edges })
}

/// Effective form of a circle action on `E_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cohom1Effective {
    pub a: Weight3,
    pub b: Weight3,
    /// Order of the kernel that was divided out (1 if already effective).
    pub k: i64,
    pub moves: Vec<EquivalenceMove>,
}

/// `k = gcd(gamma - delta, alpha - beta, alpha d - gamma (d - 1))`.
pub fn cohom1_kernel_order(p: &Cohom1Params) -> i64 {
    let t = p.alpha * p.d - p.gamma * (p.d - 1);
    (p.gamma - p.delta).gcd(&(p.alpha - p.beta)).gcd(&t)
}

/// Rewrites `E_d // S^1_{a,b}` with an effective torus action, keeping the
/// `E_d` circle: shear `a -> a + r (1,1,d)`, shift back to `a_3 = 0`, divide
/// by `k`.
pub fn effectivize_cohom1(d: i64, a: &Weight3, b: &Weight3) -> Result<Cohom1Effective> {
    let start = Cohom1Params::from_weights(d, a, b)?;
    let start_act = TorusAction6::new(*a, *b, ed_p(d), ed_q(d))?;
    if !kernel_of_action(&start_act).is_finite() {
        return Err(Error::Degenerate(format!(
            "S^1_{{{a},{b}}} and the E_{d} circle generate a circle"
        )));
    }
    let k0 = cohom1_kernel_order(&start);
    if k0 == 1 {
        return Ok(Cohom1Effective { a: *a, b: *b, k: 1, moves: Vec::new() });
    }
    let mut moves = Vec::new();
    if a[2] != 0 {
        moves.push(EquivalenceMove::Shift { c: -a[2], d: 0 });
    }
    let mut params = start;
    let mut k_total = 1i64;
    for _ in 0..8 {
        let k = cohom1_kernel_order(&params);
        if k == 0 {
            return Err(Error::Degenerate("kernel order k vanishes".into()));
        }
        if k == 1 {
            break;
        }
        let r = (params.gamma - params.alpha).rem_euclid(k);
        let mut step = Vec::new();
        if r != 0 {
            step.push(EquivalenceMove::Gl2z([[1, r], [0, 1]]));
            step.push(EquivalenceMove::Shift { c: -r * d, d: 0 });
        }
        step.push(EquivalenceMove::Scale {
            lambda: Ratio::new(1, k),
            mu: Ratio::from_integer(1),
        });
        let next = apply_all(&params.action(), &step)?;
        params = Cohom1Params::from_weights(d, next.a(), next.b())?;
        debug_assert_eq!(next.a()[2], 0);
        moves.extend(step);
        k_total *= k;
    }
    let out = params.action();
    if !kernel_of_action(&out).is_trivial() {
        return Err(Error::CertificateFailure(format!(
            "torus action still ineffective after dividing by {k_total}"
        )));
    }
    Ok(Cohom1Effective { a: params.a(), b: params.b(), k: k_total, moves })
}

/// Which worked family an action on `E_d` belongs to, after normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThmFixCase {
    General,
    /// `a = (0,-1,1)`, `b = 0`
    SphereDPlusOne,
    /// `a = (0,1,1)`, `b = (2,0,0)`
    FourPoints,
    /// `a = (0,1,1)`, `b = (0,0,2)`
    SphereDMinusOne,
    /// `a = (0,d-1,0)`, `b = (1,d-1,-1)`
    ThreePoints,
}

impl ThmFixCase {
    pub fn classify(p: &Cohom1Params) -> Self {
        let d = p.d;
        match (p.alpha, p.beta, p.gamma, p.delta) {
            (-1, -2, -1, -1) => Self::SphereDPlusOne,
            (-1, 0, 1, -1) => Self::FourPoints,
            (-1, 0, -1, -1) => Self::SphereDMinusOne,
            (0, x, 1, y) if x == d - 1 && y == d - 1 => Self::ThreePoints,
            _ => Self::General,
        }
    }

    /// Expected vertex orders (id, (12), (13), (123), (132), (23)) and edge
    /// orders (in [`EDGES`] order) for the special families.
    fn expected(&self, d: i64) -> Option<([i64; 6], [i64; 9])> {
        let mut edges = [1i64; 9];
        let vertices = match self {
            Self::General => return None,
            Self::SphereDPlusOne => {
                edges[2] = d + 1;
                [1, 1, d + 1, 1, d + 1, 1]
            }
            Self::FourPoints => {
                // L22 id-(13), L11 (23)-id, L13 (132)-(13)
                edges[6] = if (d + 1) % 3 == 0 { 3 } else { 1 };
                edges[5] = if (d - 1) % 3 == 0 { 3 } else { 1 };
                edges[2] = if (d + 1) % 2 == 0 { 2 } else { 1 };
                [3, 1, d + 1, 1, d + 1, 2 * d + 1]
            }
            Self::SphereDMinusOne => {
                edges[2] = d - 1;
                [1, 1, d - 1, 1, d - 1, 1]
            }
            Self::ThreePoints => {
                let m = d * d - d - 1;
                [1, 2 * d - 3, 1, m, m, 1]
            }
        };
        Some((vertices, edges))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThmFixReport {
    pub params: Cohom1Params,
    pub case: ThmFixCase,
    pub report: SingularLocusReport,
    pub claims: Vec<ClaimCheck>,
}

impl ThmFixReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// Singular locus of `E_d // S^1_{a,b}` with the structural claims for
/// `d >= 3` checked against it.
pub fn thmfix_report(d: i64, a: &Weight3, b: &Weight3) -> Result<ThmFixReport> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("d = {d}, expected d >= 3")));
    }
    let params = Cohom1Params::from_weights(d, a, b)?;
    let act = TorusAction6::new(*a, *b, ed_p(d), ed_q(d))?;
    let report = singular_report(&act)?;
    let case = ThmFixCase::classify(&params);
    let mut claims = Vec::new();

    let sing: Vec<P> = report.singular_vertices().map(|v| v.sigma).collect();
    claims.push(ClaimCheck {
        claim: "the singular locus is nonempty".into(),
        holds: !sing.is_empty() || report.singular_edges().next().is_some(),
    });
    if sing.len() == 2 {
        let joined = crate::eschenburg6::edge_between(sing[0], sing[1]).and_then(|e| {
            report.edge(e.label.0, e.label.1).map(|entry| entry.singular)
        });
        claims.push(ClaimCheck {
            claim: format!(
                "exactly two singular points C_{} and C_{} are joined by a singular edge",
                sing[0], sing[1]
            ),
            holds: joined == Some(true),
        });
    }
    if let Some((vs, es)) = case.expected(d) {
        for (s, want) in P::ALL.iter().zip(vs) {
            let got = report.vertex(*s).group.order();
            claims.push(ClaimCheck {
                claim: format!("C_{s} has orbifold group of order {want}"),
                holds: got == Some(BigInt::from(want)),
            });
        }
        for (e, want) in EDGES.iter().zip(es) {
            let entry = report.edge(e.label.0, e.label.1).expect("all nine edges reported");
            claims.push(ClaimCheck {
                claim: format!("{} has orbifold group of order {want}", entry.label),
                holds: entry.group.order() == Some(BigInt::from(want)) && entry.group.is_cyclic(),
            });
        }
    }
    Ok(ThmFixReport { params, case, report, claims })
}
