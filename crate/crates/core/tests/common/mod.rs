#![allow(dead_code)]

mod actions;
pub mod oracle;

pub use actions::*;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use su3orb::eschenburg6::TorusAction6;

prop_compose! {
    pub fn valid_action(r: i64)(seed in any::<u64>()) -> TorusAction6 {
        random_action(&mut ChaCha8Rng::seed_from_u64(seed), r)
    }
}
