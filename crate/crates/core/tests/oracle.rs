//! Agreement with brute-force reference implementations on random networks.

mod common;

use std::collections::BTreeSet;

use bnkit::{attractors, fixed_points, minimal_trap_spaces, trap_spaces, UpdateMode};
use common::{random_tables, state_text};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NETWORKS: u64 = 200;

#[test]
fn trap_spaces_match_subspace_filter() {
    for k in 0..NETWORKS {
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let arity = rng.gen_range(1..=6);
        let tables = random_tables(&mut rng, arity);
        let net = tables.network();
        let ours: BTreeSet<String> = minimal_trap_spaces(&net)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(ours, tables.minimal_trap_spaces(), "network {k}:\n{}", tables.to_bnet());
        let all: BTreeSet<String> = trap_spaces(&net).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(all, tables.trap_spaces(), "network {k}");
    }
}

#[test]
fn attractors_match_reachability() {
    for k in 0..NETWORKS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k);
        let arity = rng.gen_range(1..=6);
        let tables = random_tables(&mut rng, arity);
        let net = tables.network();
        for mode in UpdateMode::ALL {
            let ours: BTreeSet<Vec<String>> = attractors(&net, mode)
                .unwrap()
                .iter()
                .map(|a| {
                    a.states()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect()
                })
                .collect();
            let expected: BTreeSet<Vec<String>> = tables
                .attractors(mode.as_str())
                .into_iter()
                .map(|a| {
                    a.iter()
                        .map(|&x| state_text(x, arity))
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect()
                })
                .collect();
            assert_eq!(ours, expected, "network {k}, mode {mode}:\n{}", tables.to_bnet());
        }
        let fps: Vec<String> = fixed_points(&net).unwrap().iter().map(|x| x.to_string()).collect();
        let mut expected: Vec<String> = tables.fixed_points().iter().map(|&x| state_text(x, arity)).collect();
        expected.sort_by_key(|s| s.chars().rev().collect::<String>());
        assert_eq!(fps, expected, "network {k}");
    }
}
