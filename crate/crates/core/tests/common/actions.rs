//! Seeded generators of actions and equivalence moves.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su3orb::cohom1::Cohom1Params;
use su3orb::eschenburg6::{singular_report, validate6, TorusAction6, Validity6};
use su3orb::moves::EquivalenceMove;
use su3orb::weights::{Permutation3, Weight3};

pub fn w(x: [i64; 3]) -> Weight3 {
    Weight3(x)
}

/// Triple in `[-r, r]^3` with prescribed sum, or `None` if out of range.
fn with_sum(x0: i64, x1: i64, sum: i64, r: i64) -> Option<Weight3> {
    let x2 = sum - x0 - x1;
    (x2.abs() <= r).then_some(Weight3([x0, x1, x2]))
}

pub fn random_action(rng: &mut impl Rng, r: i64) -> TorusAction6 {
    loop {
        let mut e = || rng.random_range(-r..=r);
        let a = Weight3([e(), e(), e()]);
        let p = Weight3([e(), e(), e()]);
        let (b0, b1, q0, q1) = (e(), e(), e(), e());
        let (Some(b), Some(q)) = (with_sum(b0, b1, a.sum(), r), with_sum(q0, q1, p.sum(), r)) else {
            continue;
        };
        if let Ok(act) = TorusAction6::new(a, b, p, q) {
            if validate6(&act) != Validity6::NotOrbifold {
                return act;
            }
        }
    }
}

/// `n` valid actions with entries in `[-r, r]`, reproducible from `seed`.
pub fn seeded_actions(seed: u64, n: usize, r: i64) -> Vec<TorusAction6> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_action(&mut rng, r)).collect()
}

const GL2Z: [[[i64; 2]; 2]; 6] = [
    [[0, 1], [1, 0]],
    [[1, 1], [0, 1]],
    [[1, 0], [-1, 1]],
    [[2, 1], [1, 1]],
    [[-1, 0], [0, 1]],
    [[1, -2], [0, 1]],
];

pub fn random_move(rng: &mut impl Rng) -> EquivalenceMove {
    let small = |rng: &mut dyn rand::RngCore| {
        let x: i64 = rng.random_range(1..=3);
        if rng.random_bool(0.5) { x } else { -x }
    };
    match rng.random_range(0..5) {
        0 => EquivalenceMove::Swap,
        1 => EquivalenceMove::Scale {
            lambda: Ratio::from_integer(small(rng)),
            mu: Ratio::from_integer(small(rng)),
        },
        2 => EquivalenceMove::Shift {
            c: rng.random_range(-3..=3),
            d: rng.random_range(-3..=3),
        },
        3 => EquivalenceMove::Permute {
            sigma: Permutation3::ALL[rng.random_range(0..6)],
            tau: Permutation3::ALL[rng.random_range(0..6)],
        },
        _ => EquivalenceMove::Gl2z(GL2Z[rng.random_range(0..GL2Z.len())]),
    }
}

/// Sorted vertex and edge groups of the singular-locus graph.
pub fn group_multiset(act: &TorusAction6) -> (Vec<String>, Vec<String>) {
    let r = singular_report(act).unwrap();
    let mut v: Vec<String> = r.vertices.iter().map(|e| e.group.to_string()).collect();
    let mut e: Vec<String> = r.edges.iter().map(|e| e.group.to_string()).collect();
    v.sort();
    e.sort();
    (v, e)
}

/// Random circle on `E_d` with entries in `[-4, 4]`, if it acts as an orbifold.
pub fn ed_params(rng: &mut impl Rng, d: i64) -> Option<Cohom1Params> {
    let r = 4;
    let p = Cohom1Params::new(
        d,
        rng.random_range(-r..=r),
        rng.random_range(-r..=r),
        rng.random_range(-r..=r),
        rng.random_range(-r..=r),
    )
    .ok()?;
    (validate6(&p.action()) != Validity6::NotOrbifold).then_some(p)
}
