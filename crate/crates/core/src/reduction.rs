//! Elimination of non-autoregulated components.

use serde::Serialize;

use crate::error::{BnError, Result};
use crate::graph::{interaction_graph, self_loop};
use crate::limits::Limits;
use crate::network::BooleanNetwork;
use crate::simplify::simplify;
use crate::state::{State, Subspace};
use crate::trapspaces::minimal_trap_spaces_with_limits;

fn ensure_eliminable(net: &BooleanNetwork, i: usize) -> Result<()> {
    net.check_index(i)?;
    if net.arity() < 2 {
        return Err(BnError::InvalidArgument(
            "cannot eliminate the only component of a network".into(),
        ));
    }
    let sign = self_loop(net, i)?;
    if sign.is_present() {
        let signs = match (sign.positive, sign.negative) {
            (true, true) => "positive and negative",
            (true, false) => "positive",
            _ => "negative",
        };
        return Err(BnError::Autoregulated {
            name: net.name(i).to_string(),
            signs,
        });
    }
    Ok(())
}

/// Whether component `i` can be eliminated (it has no self-loop).
pub fn is_eliminable(net: &BooleanNetwork, i: usize) -> Result<bool> {
    net.check_index(i)?;
    Ok(net.arity() >= 2 && !self_loop(net, i)?.is_present())
}

/// Lifts a state of the reduced network by inserting the value `f_i` takes there.
pub fn representative(net: &BooleanNetwork, i: usize, x: &State) -> Result<State> {
    ensure_eliminable(net, i)?;
    if x.arity() + 1 != net.arity() {
        return Err(BnError::ArityMismatch {
            expected: net.arity() - 1,
            found: x.arity(),
        });
    }
    let probe = x.insert(i, false);
    Ok(x.insert(i, net.component_bits(i, probe.bits())))
}

/// Substitutes the rule of `i` into every rule mentioning it and drops `i`.
///
/// Only rules that actually mentioned `i` are simplified afterwards.
pub fn eliminate(net: &BooleanNetwork, i: usize) -> Result<BooleanNetwork> {
    ensure_eliminable(net, i)?;
    // f_i does not depend on x_i, so any stray syntactic occurrence may be set to 0.
    let replacement = net.rule(i).partial_eval(1 << i, 0);
    let shift = |v: usize| if v > i { v - 1 } else { v };
    let mut names = Vec::with_capacity(net.arity() - 1);
    let mut rules = Vec::with_capacity(net.arity() - 1);
    for j in (0..net.arity()).filter(|&j| j != i) {
        let rule = net.rule(j);
        let rewritten = if rule.mentions(i) {
            simplify(&rule.substitute(i, &replacement))
        } else {
            rule.clone()
        };
        names.push(net.name(j).to_string());
        rules.push(rewritten.map_vars(&shift));
    }
    BooleanNetwork::new(names, rules)
}

/// Whether no regulator of `i` also regulates a target of `i`.
pub fn is_mediator(net: &BooleanNetwork, i: usize) -> Result<bool> {
    net.check_index(i)?;
    let g = interaction_graph(net)?;
    let targets = g.targets(i);
    Ok(g.regulators(i)
        .into_iter()
        .all(|r| targets.iter().all(|&t| !g.has_edge(r, t))))
}

/// Exactly one regulator and exactly one target.
pub fn is_linear(net: &BooleanNetwork, i: usize) -> Result<bool> {
    net.check_index(i)?;
    let g = interaction_graph(net)?;
    Ok(g.regulators(i).len() == 1 && g.targets(i).len() == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationWitness {
    pub eliminated: usize,
    pub name: String,
    /// Rule of the eliminated component, i.e. the value the representative map inserts.
    pub representative_rule: String,
    #[serde(skip)]
    pub reduced: BooleanNetwork,
    pub mediator: bool,
    pub linear: bool,
}

pub fn eliminate_with_witness(net: &BooleanNetwork, i: usize) -> Result<EliminationWitness> {
    let reduced = eliminate(net, i)?;
    Ok(EliminationWitness {
        eliminated: i,
        name: net.name(i).to_string(),
        representative_rule: net.rule(i).display(net.names()).to_string(),
        reduced,
        mediator: is_mediator(net, i)?,
        linear: is_linear(net, i)?,
    })
}

/// One minimal trap space of the reduced network and the original minimal
/// trap space projecting onto it, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MtsMatch {
    pub reduced: Subspace,
    pub original: Option<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MtsPreservation {
    pub preserved: bool,
    pub original: Vec<Subspace>,
    pub matches: Vec<MtsMatch>,
}

/// Whether every minimal trap space of the reduction is the projection of a
/// minimal trap space of `net`.
pub fn strictly_preserves_mts(net: &BooleanNetwork, i: usize) -> Result<MtsPreservation> {
    strictly_preserves_mts_with_limits(net, i, &Limits::default())
}

pub fn strictly_preserves_mts_with_limits(net: &BooleanNetwork, i: usize, limits: &Limits) -> Result<MtsPreservation> {
    let reduced = eliminate(net, i)?;
    let original = minimal_trap_spaces_with_limits(net, limits)?;
    let projected: Vec<Subspace> = original.iter().map(|t| t.remove(i)).collect();
    let matches: Vec<MtsMatch> = minimal_trap_spaces_with_limits(&reduced, limits)?
        .into_iter()
        .map(|t| MtsMatch {
            reduced: t,
            original: projected.iter().position(|p| *p == t).map(|k| original[k]),
        })
        .collect();
    Ok(MtsPreservation {
        preserved: matches.iter().all(|m| m.original.is_some()),
        original,
        matches,
    })
}
