//! Brute-force oracles: torsion points of the torus fixing a stratum, and a
//! rational grid for the flatness conditions.

use num_bigint::BigInt;
use su3orb::eschenburg6::{gamma6, lgroup6, TorusAction6, EDGES};
use su3orb::lattice::AbelianGroup2;
use su3orb::weights::{Permutation3, Weight3};

pub const MAX_ORDER: i64 = 60;
pub const STEP: i64 = 127;

/// Relations `z^(a_i - b_s(i)) w^(p_i - q_s(i)) = 1` cutting out the
/// stabilizer of the permutation matrix of `s`.
pub fn fixing_rows(act: &TorusAction6, s: Permutation3) -> Vec<[i64; 2]> {
    (0..3)
        .map(|i| {
            let j = s.image(i);
            [act.a()[i] - act.b()[j], act.p()[i] - act.q()[j]]
        })
        .collect()
}

/// Number of `(z, w)` with `z^N = w^N = 1` satisfying all relations.
pub fn count_torsion(rows: &[[i64; 2]], n: i64) -> i64 {
    let mut count = 0;
    for j in 0..n {
        for k in 0..n {
            if rows.iter().all(|r| (r[0] * j + r[1] * k).rem_euclid(n) == 0) {
                count += 1;
            }
        }
    }
    count
}

/// Compares the group with the torsion counts for every `N <= MAX_ORDER`;
/// when the exponent is in range the order is compared too.
pub fn agrees(g: &AbelianGroup2, rows: &[[i64; 2]]) -> Result<(), String> {
    for n in 1..=MAX_ORDER {
        let want = count_torsion(rows, n);
        let got = g.torsion_count(&BigInt::from(n));
        if got != BigInt::from(want) {
            return Err(format!("{g}: {got} points of order dividing {n}, oracle {want}"));
        }
    }
    if let (Some(e), Some(order)) = (g.exponent(), g.order()) {
        if *e <= BigInt::from(MAX_ORDER) {
            let e: i64 = e.try_into().unwrap();
            if BigInt::from(count_torsion(rows, e)) != order {
                return Err(format!("{g}: order {order} vs oracle at exponent {e}"));
            }
        }
    }
    Ok(())
}

/// Every vertex and edge group of the action against the torsion oracle.
pub fn check_groups(act: &TorusAction6) -> Result<(), String> {
    for s in Permutation3::ALL {
        let g = gamma6(act, s).map_err(|e| e.to_string())?;
        agrees(&g, &fixing_rows(act, s)).map_err(|e| format!("{act:?} at {s}: {e}"))?;
    }
    for e in EDGES {
        let (i, j) = e.label;
        let g = lgroup6(act, i, j).map_err(|e| e.to_string())?;
        let mut rows = fixing_rows(act, e.ends.0);
        rows.extend(fixing_rows(act, e.ends.1));
        agrees(&g, &rows).map_err(|m| format!("{act:?} at L{i}{j}: {m}"))?;
    }
    Ok(())
}

fn dot(k: [i64; 3], x: &Weight3) -> i64 {
    k[0] * x[0] + k[1] * x[1] + k[2] * x[2]
}

/// Grid points `eta = k / 127` of the simplex.
fn simplex() -> impl Iterator<Item = [i64; 3]> {
    (0..=STEP).flat_map(|k0| (0..=STEP - k0).map(move |k1| [k0, k1, STEP - k0 - k1]))
}

/// `(1-t) r1 + t r2 = sum eta l` for both pairs, with `t = T/127`, scaled
/// by 127: `(127 - T) r1 + T r2 = sum k l`.
pub fn grid_condition1(act: &TorusAction6) -> bool {
    let pairs = [(act.a(), act.b()), (act.p(), act.q())];
    simplex().any(|k| {
        (0..=STEP).any(|t| {
            pairs
                .iter()
                .all(|(l, r)| (STEP - t) * r[0] + t * r[1] == dot(k, l))
        })
    })
}

/// `r3 = sum eta l` for both pairs.
pub fn grid_condition2(act: &TorusAction6) -> bool {
    simplex().any(|k| dot(k, act.a()) == STEP * act.b()[2] && dot(k, act.p()) == STEP * act.q()[2])
}

pub fn grid_flat(act: &TorusAction6) -> bool {
    grid_condition1(act) || grid_condition2(act)
}
