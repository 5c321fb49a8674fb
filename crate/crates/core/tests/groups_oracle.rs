//! Orbifold groups against brute-force counts of torsion points of the torus.

mod common;

use common::oracle::{agrees, check_groups, count_torsion, fixing_rows};
use proptest::prelude::*;
use su3orb::eschenburg6::{gamma6, kernel_of_action, TorusAction6};
use su3orb::lattice::{kernel_group, AbelianGroup2, IntMatrix};
use su3orb::weights::Permutation3;

#[test]
fn seeded_actions_match_the_torsion_oracle() {
    let acts = common::seeded_actions(2024, 200, 6);
    let mut failures = Vec::new();
    for act in &acts {
        if let Err(m) = check_groups(act) {
            failures.push(m);
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn non_cyclic_vertex_group_matches_oracle() {
    let act = TorusAction6::new(
        common::w([0, 1, 1]),
        common::w([2, 3, -3]),
        common::w([0, 0, 1]),
        common::w([2, 4, -5]),
    )
    .unwrap();
    let g = gamma6(&act, Permutation3::ID).unwrap();
    assert_eq!(g, AbelianGroup2::new(2, 2));
    assert_eq!(count_torsion(&fixing_rows(&act, Permutation3::ID), 2), 4);
}

#[test]
fn kernel_matches_oracle() {
    for act in common::seeded_actions(7, 60, 4) {
        // both diagonal factors must be the same central scalar
        let (a0, p0) = (act.a()[0], act.p()[0]);
        let rows: Vec<[i64; 2]> = (0..3)
            .flat_map(|i| [[act.a()[i] - a0, act.p()[i] - p0], [act.b()[i] - a0, act.q()[i] - p0]])
            .collect();
        let k = kernel_of_action(&act);
        if k.is_finite() {
            agrees(&k, &rows).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_group_of_random_relations(rows in prop::collection::vec([-12i64..=12, -12i64..=12], 1..5)) {
        let g = kernel_group(&IntMatrix::from_i64(&rows));
        prop_assert!(agrees(&g, &rows).is_ok(), "{:?}", agrees(&g, &rows));
    }
}
