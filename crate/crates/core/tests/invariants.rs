mod common;

use std::collections::BTreeSet;

use bnkit::expcheck::{random_network, DEFAULT_DEPTH};
use bnkit::{
    apply_control, attractors, eliminate, fixed_points, interaction_graph, is_mediator, is_trap_space,
    minimal_trap_spaces, parse_network, percolate, propagation_closure, representative, serialize_network,
    strictly_preserves_mts, successors, trap_spaces, BooleanNetwork, EdgeSign, State, Subspace, UpdateMode,
};
use common::{random_tables, Tables};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tables(seed: u64, arity: usize) -> Tables {
    random_tables(&mut ChaCha8Rng::seed_from_u64(seed), arity)
}

/// Same as `tables`, with the last component made independent of itself.
fn eliminable(seed: u64, arity: usize) -> Tables {
    let mut t = tables(seed, arity);
    let e = arity - 1;
    let own = t.tables[e];
    t.tables[e] = (0..1u64 << arity).fold(0, |acc, x| acc | (own >> (x & !(1 << e)) & 1) << x);
    t
}

fn states(arity: usize) -> impl Iterator<Item = State> {
    (0..1u64 << arity).map(move |b| State::new(b, arity))
}

fn subspace_strategy(arity: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(0u8..3, arity).prop_map(|trits| {
        let text: String = trits.iter().map(|t| ['0', '1', '*'][*t as usize]).collect();
        Subspace::parse(&text).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn round_trip(seed in any::<u64>(), arity in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = if arity == 1 {
            parse_network("a, !a").unwrap()
        } else {
            random_network(&mut rng, arity, arity - 1, false, DEFAULT_DEPTH).unwrap()
        };
        let text = serialize_network(&net);
        let back = parse_network(&text).unwrap();
        prop_assert_eq!(serialize_network(&back), text);
        for x in states(net.arity()) {
            prop_assert_eq!(net.evaluate(&x).unwrap(), back.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn missing_edge_means_no_dependence(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        let g = interaction_graph(&net).unwrap();
        for i in 0..arity {
            for j in 0..arity {
                if g.has_edge(i, j) {
                    continue;
                }
                for x in states(arity) {
                    prop_assert_eq!(
                        net.evaluate(&x).unwrap().get(j),
                        net.evaluate(&x.flip(&[i]).unwrap()).unwrap().get(j)
                    );
                }
            }
        }
    }

    #[test]
    fn control_keeps_a_subgraph(seed in any::<u64>(), s in subspace_strategy(5)) {
        let net = tables(seed, 5).network();
        let controlled = apply_control(&net, &s).unwrap();
        prop_assert!(interaction_graph(&controlled).unwrap().is_subgraph_of(&interaction_graph(&net).unwrap()));
    }

    #[test]
    fn remove_after_extend(s in subspace_strategy(5), pos in 0usize..6) {
        prop_assert_eq!(s.extend_free(pos).remove(pos), s);
    }

    #[test]
    fn modes_are_nested(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        for x in states(arity) {
            let general: BTreeSet<State> = successors(&net, &x, UpdateMode::General).unwrap().into_iter().collect();
            for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
                for y in successors(&net, &x, mode).unwrap() {
                    prop_assert!(general.contains(&y));
                }
            }
        }
    }

    #[test]
    fn attractors_are_minimal_trap_sets(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        for mode in UpdateMode::ALL {
            for a in attractors(&net, mode).unwrap() {
                let set = a.state_set();
                prop_assert!(bnkit::dynamics::is_trap_set(&net, &set, mode).unwrap());
                // Everything reachable from any member is the whole attractor.
                for &x in &set {
                    let mut seen = BTreeSet::from([x]);
                    let mut todo = vec![x];
                    while let Some(y) = todo.pop() {
                        for z in successors(&net, &y, mode).unwrap() {
                            if seen.insert(z) {
                                todo.push(z);
                            }
                        }
                    }
                    prop_assert_eq!(&seen, &set);
                }
            }
        }
    }

    #[test]
    fn fixed_points_are_singleton_attractors(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        let fps: Vec<State> = fixed_points(&net).unwrap();
        for mode in UpdateMode::ALL {
            let singles: Vec<State> = attractors(&net, mode)
                .unwrap()
                .into_iter()
                .filter(|a| a.len() == 1)
                .map(|a| a.least())
                .collect();
            prop_assert_eq!(&singles, &fps);
        }
    }

    #[test]
    fn minimal_trap_spaces_hold_attractors(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        let attrs: Vec<_> = UpdateMode::ALL.iter().map(|&m| attractors(&net, m).unwrap()).collect();
        for t in minimal_trap_spaces(&net).unwrap() {
            for per_mode in &attrs {
                prop_assert!(per_mode.iter().any(|a| a.states().iter().all(|x| t.contains(x))));
            }
        }
    }

    #[test]
    fn percolation_of_trap_spaces(seed in any::<u64>(), arity in 1usize..=6) {
        let net = tables(seed, arity).network();
        let closure = propagation_closure(&net).unwrap();
        for t in trap_spaces(&net).unwrap() {
            let next = percolate(&net, &t).unwrap();
            prop_assert!(is_trap_space(&net, &next).unwrap());
            prop_assert!(next.is_subset_of(&t));
        }
        // Non-minimal trap spaces can stick out: `a, 0` has trap space `*` but closure `0`.
        for t in minimal_trap_spaces(&net).unwrap() {
            prop_assert!(t.is_subset_of(&closure));
        }
        for mode in UpdateMode::ALL {
            for a in attractors(&net, mode).unwrap() {
                prop_assert!(a.states().iter().all(|x| closure.contains(x)));
            }
        }
    }

    #[test]
    fn fixed_point_bijection(seed in any::<u64>(), arity in 2usize..=6) {
        let t = eliminable(seed, arity);
        let net = t.network();
        let e = arity - 1;
        let reduced = eliminate(&net, e).unwrap();
        let projected: Vec<State> = fixed_points(&net).unwrap().iter().map(|x| x.remove(e)).collect();
        let mut ours = fixed_points(&reduced).unwrap();
        ours.sort();
        let mut projected_sorted = projected.clone();
        projected_sorted.sort();
        prop_assert_eq!(ours, projected_sorted);
    }

    #[test]
    fn transitions_correspond(seed in any::<u64>(), arity in 2usize..=6) {
        let net = eliminable(seed, arity).network();
        let e = arity - 1;
        let reduced = eliminate(&net, e).unwrap();
        for mode in UpdateMode::ALL {
            for x in states(arity - 1) {
                let lifted = representative(&net, e, &x).unwrap();
                let ours: BTreeSet<u64> = successors(&reduced, &x, mode).unwrap().iter().map(|y| y.bits() ^ x.bits()).collect();
                let theirs: BTreeSet<u64> = successors(&net, &lifted, mode)
                    .unwrap()
                    .iter()
                    .map(|y| y.bits() ^ lifted.bits())
                    .filter(|flip| flip >> e & 1 == 0)
                    .collect();
                prop_assert_eq!(&ours, &theirs, "mode {} state {}", mode, x);
                // Off-representative states step to their representative.
                if mode != UpdateMode::Synchronous {
                    let other = lifted.flip(&[e]).unwrap();
                    prop_assert!(successors(&net, &other, mode).unwrap().contains(&lifted));
                }
            }
        }
    }

    #[test]
    fn reduced_edges_have_signed_paths(seed in any::<u64>(), arity in 2usize..=6) {
        let net = eliminable(seed, arity).network();
        let e = arity - 1;
        let g = interaction_graph(&net).unwrap();
        let r = interaction_graph(&eliminate(&net, e).unwrap()).unwrap();
        let through = |a: usize, b: usize| -> EdgeSign {
            let (p, q) = (g.sign(a, e), g.sign(e, b));
            EdgeSign {
                positive: (p.positive && q.positive) || (p.negative && q.negative),
                negative: (p.positive && q.negative) || (p.negative && q.positive),
            }
        };
        for (a, b, sign) in r.edges() {
            let direct = g.sign(a, b);
            let via = through(a, b);
            prop_assert!(!sign.positive || direct.positive || via.positive, "{}->{} +", a, b);
            prop_assert!(!sign.negative || direct.negative || via.negative, "{}->{} -", a, b);
        }
    }

    #[test]
    fn mediators_preserve_minimal_trap_spaces(seed in any::<u64>(), arity in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net: BooleanNetwork = random_network(&mut rng, arity, arity - 1, true, DEFAULT_DEPTH).unwrap();
        prop_assert!(is_mediator(&net, arity - 1).unwrap());
        prop_assert!(strictly_preserves_mts(&net, arity - 1).unwrap().preserved);
    }
}

#[test]
fn cylinders_hold_one_attractor() {
    for seed in 0..200 {
        let net = eliminable(seed, 5).network();
        for mode in [UpdateMode::Asynchronous, UpdateMode::General] {
            let attrs = attractors(&net, mode).unwrap();
            for a in &attrs {
                let shadow: BTreeSet<State> = a.states().iter().map(|x| x.remove(4)).collect();
                let inside = attrs
                    .iter()
                    .filter(|b| b.states().iter().all(|x| shadow.contains(&x.remove(4))))
                    .count();
                assert_eq!(inside, 1, "seed {seed} mode {mode}");
            }
        }
    }
}
