//! Six-dimensional biquotients `SU(3)//T^2`.
//!
//! The torus `T^2 = {(z, w)}` acts by
//! `X -> diag(z^a w^p) X diag(z^b w^q)^-1`.
//! Fixed points of the induced `T^2`-action on the quotient are the six
//! permutation strata `C_sigma`; the nine edges joining them form the complete
//! bipartite graph between even and odd permutations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::eschenburg7::{gamma7, CircleAction7};
use crate::error::{Error, Result};
use crate::lattice::{kernel_group, snf2_with_transform, AbelianGroup2, IntMatrix};
use crate::moves::{apply_all, apply_equivalence, EquivalenceMove};
use crate::weights::{Permutation3 as P, Weight3};

/// Torus action with weights `(a, b)` on the first circle and `(p, q)` on the
/// second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusAction6 {
    a: Weight3,
    b: Weight3,
    p: Weight3,
    q: Weight3,
}

impl TorusAction6 {
    pub fn new(a: Weight3, b: Weight3, p: Weight3, q: Weight3) -> Result<Self> {
        if a.sum() != b.sum() {
            return Err(Error::SumMismatch {
                left_name: "a",
                right_name: "b",
                left: a.sum(),
                right: b.sum(),
            });
        }
        if p.sum() != q.sum() {
            return Err(Error::SumMismatch {
                left_name: "p",
                right_name: "q",
                left: p.sum(),
                right: q.sum(),
            });
        }
        Ok(Self { a, b, p, q })
    }

    pub fn a(&self) -> &Weight3 {
        &self.a
    }
    pub fn b(&self) -> &Weight3 {
        &self.b
    }
    pub fn p(&self) -> &Weight3 {
        &self.p
    }
    pub fn q(&self) -> &Weight3 {
        &self.q
    }

    pub fn first_circle(&self) -> CircleAction7 {
        CircleAction7::new(self.a, self.b).expect("sums checked on construction")
    }

    pub fn second_circle(&self) -> CircleAction7 {
        CircleAction7::new(self.p, self.q).expect("sums checked on construction")
    }

    /// Relations cutting out the stabilizer of the `C_sigma` stratum.
    pub fn vertex_relations(&self, sigma: P) -> IntMatrix {
        let bs = sigma.apply(&self.b);
        let qs = sigma.apply(&self.q);
        IntMatrix::from_i64(&[
            [self.a[0] - bs[0], self.p[0] - qs[0]],
            [self.a[1] - bs[1], self.p[1] - qs[1]],
            [self.a[2] - bs[2], self.p[2] - qs[2]],
        ])
    }

    /// `det [[a1 - b_s(1), p1 - q_s(1)], [a2 - b_s(2), p2 - q_s(2)]]`; its
    /// absolute value is the order of the vertex group.
    pub fn vertex_determinant(&self, sigma: P) -> i128 {
        let bs = sigma.apply(&self.b);
        let qs = sigma.apply(&self.q);
        let x1 = (self.a[0] - bs[0]) as i128;
        let y1 = (self.p[0] - qs[0]) as i128;
        let x2 = (self.a[1] - bs[1]) as i128;
        let y2 = (self.p[1] - qs[1]) as i128;
        x1 * y2 - x2 * y1
    }

    /// Relations cutting out the kernel of the action on `SU(3)`.
    pub fn kernel_relations(&self) -> IntMatrix {
        let (a, b, p, q) = (&self.a, &self.b, &self.p, &self.q);
        IntMatrix::from_i64(&[
            [a[1] - a[0], p[1] - p[0]],
            [a[2] - a[0], p[2] - p[0]],
            [a[0] - b[0], p[0] - q[0]],
            [a[1] - b[1], p[1] - q[1]],
            [a[2] - b[2], p[2] - q[2]],
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Validity6 {
    NotOrbifold,
    Orbifold,
    FreeManifold,
}

/// Orbifold iff every vertex determinant is nonzero.
pub fn validate6(act: &TorusAction6) -> Validity6 {
    let dets: Vec<i128> = P::ALL.iter().map(|&s| act.vertex_determinant(s)).collect();
    if dets.contains(&0) {
        Validity6::NotOrbifold
    } else if dets.iter().all(|d| d.abs() == 1) {
        Validity6::FreeManifold
    } else {
        Validity6::Orbifold
    }
}

/// Raw isotropy group of the `C_sigma` stratum.
pub fn gamma6(act: &TorusAction6, sigma: P) -> Result<AbelianGroup2> {
    let det = act.vertex_determinant(sigma);
    if det == 0 {
        return Err(Error::InfiniteStabilizer(format!("C_{sigma}")));
    }
    let g = kernel_group(&act.vertex_relations(sigma));
    // order is |det|; first invariant factor is gcd of the two circle orders
    let r1 = gamma7(&act.first_circle(), sigma).map_or(BigInt::zero(), |g| g.d2().clone());
    let r2 = gamma7(&act.second_circle(), sigma).map_or(BigInt::zero(), |g| g.d2().clone());
    if g.order() != Some(BigInt::from(det.abs())) || *g.d1() != r1.gcd(&r2) {
        return Err(Error::CertificateFailure(format!(
            "group at C_{sigma} is {g}, expected order {} and first factor {}",
            det.abs(),
            r1.gcd(&r2)
        )));
    }
    Ok(g)
}

/// Edge `L_ij` with its two endpoint strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub label: (u8, u8),
    pub ends: (P, P),
}

/// The nine edges in the order L33, L21, L13, L31, L23, L11, L22, L12, L32:
/// first the hexagon, then the three long diagonals.
pub const EDGES: [Edge; 9] = [
    Edge { label: (3, 3), ends: (P::ID, P::P12) },
    Edge { label: (2, 1), ends: (P::P12, P::P132) },
    Edge { label: (1, 3), ends: (P::P132, P::P13) },
    Edge { label: (3, 1), ends: (P::P13, P::P123) },
    Edge { label: (2, 3), ends: (P::P123, P::P23) },
    Edge { label: (1, 1), ends: (P::P23, P::ID) },
    Edge { label: (2, 2), ends: (P::ID, P::P13) },
    Edge { label: (1, 2), ends: (P::P12, P::P123) },
    Edge { label: (3, 2), ends: (P::P132, P::P23) },
];

pub fn edge(i: u8, j: u8) -> Result<Edge> {
    EDGES
        .iter()
        .copied()
        .find(|e| e.label == (i, j))
        .ok_or_else(|| Error::InvalidArgument(format!("no edge L{i}{j}")))
}

/// The edge joining two strata, if any.
pub fn edge_between(s: P, t: P) -> Option<Edge> {
    EDGES
        .iter()
        .copied()
        .find(|e| e.ends == (s, t) || e.ends == (t, s))
}

/// Isotropy group along the edge `L_ij`: the intersection of the two
/// endpoint groups.
pub fn lgroup6(act: &TorusAction6, i: u8, j: u8) -> Result<AbelianGroup2> {
    let e = edge(i, j)?;
    for s in [e.ends.0, e.ends.1] {
        if act.vertex_determinant(s) == 0 {
            return Err(Error::InfiniteStabilizer(format!("C_{s}")));
        }
    }
    let rel = act
        .vertex_relations(e.ends.0)
        .stack(&act.vertex_relations(e.ends.1));
    Ok(kernel_group(&rel))
}

/// Kernel of the `T^2`-action on `SU(3)`.
pub fn kernel_of_action(act: &TorusAction6) -> AbelianGroup2 {
    kernel_group(&act.kernel_relations())
}

/// An action made effective together with the moves that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Effectivized {
    pub action: TorusAction6,
    pub kernel: AbelianGroup2,
    pub moves: Vec<EquivalenceMove>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

/// Divides out the ineffective kernel: a unimodular change of torus basis
/// splitting the kernel as `Z_d1 + Z_d2`, a shift making the first entries
/// zero, then the rescaling `(1/d1, 1/d2)`.
pub fn effectivize(act: &TorusAction6) -> Result<Effectivized> {
    let kernel = kernel_of_action(act);
    if !kernel.is_finite() {
        return Err(Error::InfiniteKernel);
    }
    let mut cur = *act;
    let mut moves = Vec::new();
    // each pass removes the whole kernel; the loop only guards the certificate
    for _ in 0..4 {
        let snf = snf2_with_transform(&cur.kernel_relations());
        if snf.d1.is_one() && snf.d2.is_one() {
            return Ok(Effectivized { action: cur, kernel, moves });
        }
        let v = &snf.col_transform;
        let vt = [
            [small(&v[0][0])?, small(&v[1][0])?],
            [small(&v[0][1])?, small(&v[1][1])?],
        ];
        let mut step = Vec::new();
        if vt != [[1, 0], [0, 1]] {
            step.push(EquivalenceMove::Gl2z(vt));
        }
        let mid = apply_all(&cur, &step)?;
        let (c, d) = (-mid.a[0], -mid.p[0]);
        if c != 0 || d != 0 {
            step.push(EquivalenceMove::Shift { c, d });
        }
        step.push(EquivalenceMove::Scale {
            lambda: Ratio::new(1, small(&snf.d1)?),
            mu: Ratio::new(1, small(&snf.d2)?),
        });
        cur = apply_all(&cur, &step)?;
        moves.extend(step);
    }
    Err(Error::CertificateFailure(
        "kernel not removed after repeated effectivization".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexEntry {
    pub sigma: P,
    pub group: AbelianGroup2,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeEntry {
    pub label: String,
    pub ends: (P, P),
    pub group: AbelianGroup2,
    pub singular: bool,
}

/// Orbifold groups of all fixed points and edges of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularLocusReport {
    pub valid: bool,
    pub effective: bool,
    pub kernel: AbelianGroup2,
    /// Action whose groups are reported (the effective form when the input
    /// has a kernel).
    pub analyzed: TorusAction6,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    pub warnings: Vec<String>,
}

impl SingularLocusReport {
    pub fn singular_vertices(&self) -> impl Iterator<Item = &VertexEntry> {
        self.vertices.iter().filter(|v| v.singular)
    }

    pub fn singular_edges(&self) -> impl Iterator<Item = &EdgeEntry> {
        self.edges.iter().filter(|e| e.singular)
    }

    pub fn vertex(&self, sigma: P) -> &VertexEntry {
        &self.vertices[sigma.index()]
    }

    pub fn edge(&self, i: u8, j: u8) -> Option<&EdgeEntry> {
        let label = format!("L{i}{j}");
        self.edges.iter().find(|e| e.label == label)
    }

    /// Multiset of vertex group orders, sorted.
    pub fn vertex_orders(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self
            .vertices
            .iter()
            .map(|v| v.group.order().unwrap_or_default())
            .collect();
        v.sort();
        v
    }

    /// Multiset of edge group orders, sorted.
    pub fn edge_orders(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self
            .edges
            .iter()
            .map(|e| e.group.order().unwrap_or_default())
            .collect();
        v.sort();
        v
    }

    pub fn is_manifold(&self) -> bool {
        self.singular_vertices().next().is_none()
    }
}

/// Singular locus of `SU(3)//T^2`. Ineffective actions are first made
/// effective so the groups are those of the orbifold.
pub fn singular_report(act: &TorusAction6) -> Result<SingularLocusReport> {
    if validate6(act) == Validity6::NotOrbifold {
        let bad: Vec<&str> = P::ALL
            .iter()
            .filter(|&&s| act.vertex_determinant(s) == 0)
            .map(|s| s.name())
            .collect();
        return Err(Error::NotOrbifold(format!(
            "infinite stabilizer at C_sigma for sigma in {{{}}}",
            bad.join(", ")
        )));
    }
    let kernel = kernel_of_action(act);
    let mut warnings = Vec::new();
    let analyzed = if kernel.is_trivial() {
        *act
    } else {
        let eff = effectivize(act)?;
        warnings.push(format!(
            "action has ineffective kernel {kernel}; groups are reported for the effective action {}",
            describe(&eff.action)
        ));
        eff.action
    };
    let mut vertices = Vec::with_capacity(6);
    for s in P::ALL {
        let group = gamma6(&analyzed, s)?;
        vertices.push(VertexEntry {
            sigma: s,
            singular: !group.is_trivial(),
            group,
        });
    }
    let mut edges = Vec::with_capacity(9);
    for e in EDGES {
        let group = lgroup6(&analyzed, e.label.0, e.label.1)?;
        let (gs, gt) = (&vertices[e.ends.0.index()].group, &vertices[e.ends.1.index()].group);
        for end in [gs, gt] {
            let (o, oe) = (end.order().unwrap(), group.order().unwrap());
            if !o.is_multiple_of(&oe) {
                return Err(Error::CertificateFailure(format!(
                    "edge group {group} of L{}{} does not divide endpoint group {end}",
                    e.label.0, e.label.1
                )));
            }
        }
        if !group.is_cyclic() {
            warnings.push(format!(
                "edge L{}{} has non-cyclic group {group}",
                e.label.0, e.label.1
            ));
        }
        edges.push(EdgeEntry {
            label: format!("L{}{}", e.label.0, e.label.1),
            ends: e.ends,
            singular: !group.is_trivial(),
            group,
        });
    }
    Ok(SingularLocusReport {
        valid: true,
        effective: kernel.is_trivial(),
        kernel,
        analyzed,
        vertices,
        edges,
        warnings,
    })
}

pub fn describe(act: &TorusAction6) -> String {
    format!("a={} b={} p={} q={}", act.a, act.b, act.p, act.q)
}

/// Applies one move and reports; used by property tests.
pub fn report_after(act: &TorusAction6, m: &EquivalenceMove) -> Result<SingularLocusReport> {
    singular_report(&apply_equivalence(act, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(a: [i64; 3], b: [i64; 3], p: [i64; 3], q: [i64; 3]) -> TorusAction6 {
        TorusAction6::new(a.into(), b.into(), p.into(), q.into()).unwrap()
    }

    fn non_cyclic() -> TorusAction6 {
        act([0, 1, 1], [2, 3, -3], [0, 0, 1], [2, 4, -5])
    }

    #[test]
    fn non_cyclic_vertex_and_edge_groups() {
        let a = non_cyclic();
        assert_eq!(validate6(&a), Validity6::Orbifold);
        assert_eq!(gamma6(&a, P::ID).unwrap(), AbelianGroup2::new(2, 2));
        let l33 = lgroup6(&a, 3, 3).unwrap();
        assert!(l33.order().unwrap() <= BigInt::from(2));
        let b = act([0, 1, 1], [2, 0, 0], [1, 1, 0], [0, 0, 2]);
        assert_eq!(gamma6(&b, P::ID).unwrap(), AbelianGroup2::cyclic(3));
        assert!(kernel_of_action(&a).is_trivial());
        let r = singular_report(&a).unwrap();
        assert!(r.effective);
        assert!(!r.vertex(P::ID).group.is_cyclic());
    }

    #[test]
    fn edges_form_bipartite_graph() {
        for e in EDGES {
            assert_ne!(e.ends.0.is_even(), e.ends.1.is_even());
        }
        for s in P::ALL.iter().filter(|s| s.is_even()) {
            for t in P::ALL.iter().filter(|t| !t.is_even()) {
                assert!(edge_between(*s, *t).is_some());
            }
        }
    }

    #[test]
    fn doubled_non_cyclic_has_order_two_kernel() {
        let a = act([0, 1, 1], [2, 3, -3], [0, 0, 2], [4, 8, -10]);
        let k = kernel_of_action(&a);
        assert_eq!(k, AbelianGroup2::cyclic(2));
        let eff = effectivize(&a).unwrap();
        assert!(kernel_of_action(&eff.action).is_trivial());
        assert_eq!(apply_all(&a, &eff.moves).unwrap(), eff.action);
        let r = singular_report(&a).unwrap();
        assert!(!r.effective);
        assert_eq!(r.vertex_orders(), singular_report(&non_cyclic()).unwrap().vertex_orders());
    }

    #[test]
    fn infinite_kernel_detected() {
        let a = act([2, 0, 0], [0, 2, 0], [0, 1, 1], [1, 0, 1]);
        assert!(!kernel_of_action(&a).is_finite());
        assert_eq!(effectivize(&a), Err(Error::InfiniteKernel));
    }

    #[test]
    fn effective_input_unchanged() {
        let eff = effectivize(&non_cyclic()).unwrap();
        assert!(eff.moves.is_empty());
        assert_eq!(eff.action, non_cyclic());
    }

    #[test]
    fn not_orbifold_rejected() {
        let a = act([0, 0, 0], [0, 0, 0], [1, 2, 3], [1, 2, 3]);
        assert_eq!(validate6(&a), Validity6::NotOrbifold);
        assert!(matches!(singular_report(&a), Err(Error::NotOrbifold(_))));
    }
}
