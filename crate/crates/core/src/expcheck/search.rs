//! Randomized counterexample search over small networks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::properties::{check_instance, Instance, Position, PropertyId};
use crate::error::{BnError, Result};
use crate::expr::BoolExpr;
use crate::graph::is_autoregulated;
use crate::network::BooleanNetwork;
use crate::parser::{parse_network, serialize_network};
use crate::reduction::is_mediator;
use crate::state::Subspace;

pub const DEFAULT_DEPTH: usize = 4;

/// Generated networks stay small enough for exhaustive strategy search.
pub const MAX_SEARCH_ARITY: usize = 12;

const MAX_ATTEMPTS: usize = 10_000;

/// Random expression over `pool`, at most `depth` operators deep.
pub fn random_rule<R: Rng>(rng: &mut R, pool: &[usize], depth: usize) -> BoolExpr {
    if pool.is_empty() {
        return BoolExpr::constant(rng.gen());
    }
    if depth == 0 || rng.gen_bool(0.1) {
        if rng.gen_bool(0.05) {
            return BoolExpr::constant(rng.gen());
        }
        let v = BoolExpr::var(*pool.choose(rng).expect("pool is not empty"));
        return if rng.gen() { v } else { BoolExpr::negate(v) };
    }
    match rng.gen_range(0..5) {
        0 => BoolExpr::negate(random_rule(rng, pool, depth - 1)),
        1 | 2 => BoolExpr::and(vec![
            random_rule(rng, pool, depth - 1),
            random_rule(rng, pool, depth - 1),
        ]),
        _ => BoolExpr::or(vec![
            random_rule(rng, pool, depth - 1),
            random_rule(rng, pool, depth - 1),
        ]),
    }
}

/// Random network whose component `eliminated` has no self-loop, and is a
/// mediator when `mediator` is set.
pub fn random_network<R: Rng>(
    rng: &mut R,
    arity: usize,
    eliminated: usize,
    mediator: bool,
    depth: usize,
) -> Result<BooleanNetwork> {
    if arity < 2 || eliminated >= arity {
        return Err(BnError::InvalidArgument(format!(
            "cannot sample a network of arity {arity} eliminating component {}",
            eliminated + 1
        )));
    }
    let all: Vec<usize> = (0..arity).collect();
    for _ in 0..MAX_ATTEMPTS {
        let others: Vec<usize> = all.iter().copied().filter(|&j| j != eliminated).collect();
        let rules: Vec<BoolExpr> = if mediator {
            // Targets of the eliminated component read nothing its regulators read.
            let regulators: Vec<usize> = others.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            (0..arity)
                .map(|j| {
                    if j == eliminated {
                        random_rule(rng, &regulators, depth)
                    } else if rng.gen_bool(0.5) {
                        let pool: Vec<usize> = all.iter().copied().filter(|v| !regulators.contains(v)).collect();
                        random_rule(rng, &pool, depth)
                    } else {
                        random_rule(rng, &others, depth)
                    }
                })
                .collect()
        } else {
            (0..arity)
                .map(|j| {
                    let pool = if j == eliminated { &others } else { &all };
                    random_rule(rng, pool, depth)
                })
                .collect()
        };
        let net = BooleanNetwork::from_rules(rules)?;
        if is_autoregulated(&net, eliminated)? {
            continue;
        }
        if mediator && !is_mediator(&net, eliminated)? {
            continue;
        }
        return Ok(net);
    }
    Err(BnError::InvalidArgument("network sampling did not converge".into()))
}

/// Random phenotype; it fixes at least one component.
pub fn random_phenotype<R: Rng>(rng: &mut R, arity: usize, eliminated: usize, position: Option<Position>) -> Subspace {
    let fix_eliminated = match position {
        Some(Position::Fixed) => true,
        Some(Position::Free) => false,
        None => rng.gen(),
    };
    let mut others: Vec<usize> = (0..arity).filter(|&j| j != eliminated).collect();
    others.shuffle(rng);
    let least = usize::from(!fix_eliminated).min(others.len());
    let count = rng.gen_range(least..=others.len());
    let mut fixed = 0u64;
    let mut values = 0u64;
    let chosen = others.iter().take(count).copied();
    for j in chosen.chain(fix_eliminated.then_some(eliminated)) {
        fixed |= 1 << j;
        if rng.gen() {
            values |= 1 << j;
        }
    }
    Subspace::new(fixed, values, arity)
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The instance drawn for sample `index`; the last component is eliminated.
pub fn sample_instance(property: PropertyId, arity: usize, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = sample_rng(seed, index);
    let e = arity.saturating_sub(1);
    let net = random_network(&mut rng, arity, e, property.requires_mediator(), DEFAULT_DEPTH)?;
    let phenotype = random_phenotype(&mut rng, arity, e, property.position());
    Instance::new(net, e, phenotype)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterExample {
    pub property: PropertyId,
    pub seed: u64,
    pub sample: u64,
    pub network: String,
    /// Zero-based index of the eliminated component.
    pub eliminated: usize,
    pub phenotype: Subspace,
    pub evidence: Vec<String>,
}

impl CounterExample {
    pub fn instance(&self) -> Result<Instance> {
        Instance::new(parse_network(&self.network)?, self.eliminated, self.phenotype)
    }
}

/// Re-checks a reported counterexample from its serialized form.
pub fn verify_counterexample(example: &CounterExample) -> Result<bool> {
    Ok(check_instance(example.property, &example.instance()?)?.is_some())
}

/// First sample (by index) on which `property` fails, if any.
///
/// The result does not depend on the number of worker threads.
pub fn search_counterexample(
    property: PropertyId,
    arity: usize,
    samples: u64,
    seed: u64,
) -> Result<Option<CounterExample>> {
    if !(2..=MAX_SEARCH_ARITY).contains(&arity) {
        return Err(BnError::Capacity {
            what: "counterexample search",
            arity,
            cap: MAX_SEARCH_ARITY,
        });
    }
    let found = (0..samples).into_par_iter().find_map_first(|index| {
        let run = || -> Result<Option<CounterExample>> {
            let instance = sample_instance(property, arity, seed, index)?;
            Ok(check_instance(property, &instance)?.map(|evidence| CounterExample {
                property,
                seed,
                sample: index,
                network: serialize_network(&instance.network),
                eliminated: instance.eliminated,
                phenotype: instance.phenotype,
                evidence,
            }))
        };
        run().transpose()
    });
    let Some(example) = found.transpose()? else {
        return Ok(None);
    };
    if !verify_counterexample(&example)? {
        return Err(BnError::InvalidNetwork(format!(
            "counterexample for {property} at sample {} did not survive re-checking",
            example.sample
        )));
    }
    Ok(Some(example))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::is_eliminable;

    #[test]
    fn samples_are_reproducible() {
        let p: PropertyId = "AD-forward-general".parse().unwrap();
        let a = sample_instance(p, 4, 7, 3).unwrap();
        let b = sample_instance(p, 4, 7, 3).unwrap();
        assert_eq!(a.network, b.network);
        assert_eq!(a.phenotype, b.phenotype);
        let c = sample_instance(p, 4, 7, 4).unwrap();
        assert!(a.network != c.network || a.phenotype != c.phenotype);
    }

    #[test]
    fn generator_respects_constraints() {
        let mut rng = sample_rng(1, 0);
        for _ in 0..200 {
            let net = random_network(&mut rng, 5, 4, true, DEFAULT_DEPTH).unwrap();
            assert!(is_eliminable(&net, 4).unwrap());
            assert!(is_mediator(&net, 4).unwrap());
            let p = random_phenotype(&mut rng, 5, 4, Some(Position::Free));
            assert!(!p.is_fixed(4));
            assert!(p.fixed_count() >= 1);
            let q = random_phenotype(&mut rng, 5, 4, Some(Position::Fixed));
            assert!(q.is_fixed(4));
        }
    }

    #[test]
    fn finds_forward_counterexample() {
        let p: PropertyId = "AD-forward-general".parse().unwrap();
        let w = search_counterexample(p, 3, 5000, 11).unwrap().expect("witness");
        assert!(verify_counterexample(&w).unwrap());
    }

    #[test]
    fn rejects_bad_arity() {
        let p: PropertyId = "thm-min-ts".parse().unwrap();
        assert!(search_counterexample(p, 1, 10, 0).unwrap_err().is_capacity());
    }
}
