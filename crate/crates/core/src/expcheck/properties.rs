//! Implication cells and theorem-level properties, checked on single instances.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::control::{apply_control, candidate_strategies, is_control_strategy, Criterion};
use crate::dynamics::{attractors, fixed_points, successors, UpdateMode};
use crate::error::{BnError, Result};
use crate::graph::interaction_graph;
use crate::network::BooleanNetwork;
use crate::reduction::{eliminate, is_mediator, representative, strictly_preserves_mts};
use crate::state::{State, Subspace};
use crate::trapspaces::{is_trap_space, minimal_trap_spaces, percolate, propagation_closure, trap_spaces};

/// Which way the implication between control strategies runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// A strategy for the original network implies one for the reduction.
    Forward,
    /// A strategy for the reduction implies one for the original network.
    Backward,
}

/// Whether the eliminated component is fixed in the phenotype.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Fixed,
    Free,
}

/// One implication: a strategy under `hypothesis` on one side implies a
/// strategy under `conclusion` on the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub hypothesis: Criterion,
    pub conclusion: Criterion,
    pub direction: Direction,
    pub mediator: bool,
    /// `None` samples both placements.
    pub position: Option<Position>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Elimination commutes with control when the eliminated component is free.
    ReductionCommutes,
    FixedPointBijection,
    TrapSpaceProjection,
    /// Mediator elimination strictly preserves minimal trap spaces.
    MinimalTrapSpaces,
    TrapSets,
    NoTwoAttractors,
    MtsControl,
    Propagation,
    PropagationLemma,
    PropagationInReduction,
    PropagationInReductionMediator,
    VpImplications,
}

impl Theorem {
    pub const ALL: [Theorem; 12] = [
        Theorem::ReductionCommutes,
        Theorem::FixedPointBijection,
        Theorem::TrapSpaceProjection,
        Theorem::MinimalTrapSpaces,
        Theorem::TrapSets,
        Theorem::NoTwoAttractors,
        Theorem::MtsControl,
        Theorem::Propagation,
        Theorem::PropagationLemma,
        Theorem::PropagationInReduction,
        Theorem::PropagationInReductionMediator,
        Theorem::VpImplications,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::ReductionCommutes => "prop-red-sub",
            Theorem::FixedPointBijection => "fp-bijection",
            Theorem::TrapSpaceProjection => "prop-ts-projection",
            Theorem::MinimalTrapSpaces => "thm-min-ts",
            Theorem::TrapSets => "lemma-trap-sets",
            Theorem::NoTwoAttractors => "lemma-no-2-attrs",
            Theorem::MtsControl => "thm-min-ts-control",
            Theorem::Propagation => "thm-propagation",
            Theorem::PropagationLemma => "lemma-propagation",
            Theorem::PropagationInReduction => "thm-perc-in-red",
            Theorem::PropagationInReductionMediator => "thm-perc-in-red-2",
            Theorem::VpImplications => "vp-implications",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyId {
    Cell(Cell),
    Theorem(Theorem),
}

impl PropertyId {
    /// Samples for this property must have a mediator as eliminated component.
    pub fn requires_mediator(self) -> bool {
        match self {
            PropertyId::Cell(c) => c.mediator,
            PropertyId::Theorem(t) => matches!(
                t,
                Theorem::MinimalTrapSpaces | Theorem::MtsControl | Theorem::PropagationInReductionMediator
            ),
        }
    }

    /// Required placement of the eliminated component in sampled phenotypes.
    pub fn position(self) -> Option<Position> {
        match self {
            PropertyId::Cell(c) => c.position,
            PropertyId::Theorem(Theorem::PropagationInReduction | Theorem::PropagationInReductionMediator) => {
                Some(Position::Free)
            }
            PropertyId::Theorem(_) => None,
        }
    }

    /// Expected status: `true` when the property always holds.
    pub fn always_holds(self) -> Option<bool> {
        match self {
            PropertyId::Theorem(_) => Some(true),
            PropertyId::Cell(c) => table_entry(&c).map(|e| e.holds),
        }
    }
}

fn criterion_id(c: Criterion) -> &'static str {
    c.label()
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", criterion_id(self.hypothesis))?;
        if self.conclusion != self.hypothesis {
            write!(f, "/{}", criterion_id(self.conclusion))?;
        }
        let direction = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        let kind = if self.mediator { "mediator" } else { "general" };
        write!(f, "-{direction}-{kind}")?;
        match self.position {
            Some(Position::Fixed) => write!(f, "-fixed"),
            Some(Position::Free) => write!(f, "-free"),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyId::Cell(c) => c.fmt(f),
            PropertyId::Theorem(t) => f.write_str(t.id()),
        }
    }
}

impl Serialize for PropertyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_criterion(text: &str) -> Option<Criterion> {
    match text {
        "sd" => Some(Criterion::Attractor(UpdateMode::Synchronous)),
        "ad" => Some(Criterion::Attractor(UpdateMode::Asynchronous)),
        "gd" => Some(Criterion::Attractor(UpdateMode::General)),
        "mts" => Some(Criterion::MinimalTrapSpace),
        "vp" => Some(Criterion::ValuePropagation),
        _ => None,
    }
}

impl FromStr for PropertyId {
    type Err = BnError;

    fn from_str(text: &str) -> Result<PropertyId> {
        let lower = text.trim().to_ascii_lowercase();
        if let Some(t) = Theorem::ALL.iter().find(|t| t.id() == lower) {
            return Ok(PropertyId::Theorem(*t));
        }
        let bad = || BnError::InvalidArgument(format!("unknown property `{text}`"));
        let mut parts = lower.split('-');
        let criteria = parts.next().ok_or_else(bad)?;
        let (hypothesis, conclusion) = match criteria.split_once('/') {
            Some((h, c)) => (parse_criterion(h), parse_criterion(c)),
            None => (parse_criterion(criteria), parse_criterion(criteria)),
        };
        let (hypothesis, conclusion) = hypothesis.zip(conclusion).ok_or_else(bad)?;
        let direction = match parts.next() {
            Some("forward") => Direction::Forward,
            Some("backward") => Direction::Backward,
            _ => return Err(bad()),
        };
        let mediator = match parts.next() {
            Some("general") => false,
            Some("mediator") => true,
            _ => return Err(bad()),
        };
        let position = match parts.next() {
            None => None,
            Some("fixed") => Some(Position::Fixed),
            Some("free") => Some(Position::Free),
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(PropertyId::Cell(Cell {
            hypothesis,
            conclusion,
            direction,
            mediator,
            position,
        }))
    }
}

/// A cell of the summary table and the evidence for its status.
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub cell: Cell,
    pub holds: bool,
    /// Theorem id for cells that always hold, case id for the others.
    pub source: &'static str,
}

const SD: Criterion = Criterion::Attractor(UpdateMode::Synchronous);
const AD: Criterion = Criterion::Attractor(UpdateMode::Asynchronous);
const GD: Criterion = Criterion::Attractor(UpdateMode::General);
const MTS: Criterion = Criterion::MinimalTrapSpace;
const VP: Criterion = Criterion::ValuePropagation;

/// Every cell with its status; cells with the same criterion on both sides come first.
pub fn table() -> Vec<TableEntry> {
    use Direction::*;
    use Position::*;
    let mut out = Vec::new();
    let mut push = |h: Criterion, c: Criterion, d, mediator, p, holds, source| {
        out.push(TableEntry {
            cell: Cell {
                hypothesis: h,
                conclusion: c,
                direction: d,
                mediator,
                position: Some(p),
            },
            holds,
            source,
        })
    };
    for crit in Criterion::ALL {
        let attractor = matches!(crit, Criterion::Attractor(_));
        // Eliminated component fixed in the phenotype.
        if crit == VP {
            push(crit, crit, Forward, false, Fixed, true, "thm-propagation");
            push(crit, crit, Forward, true, Fixed, true, "thm-propagation");
        } else {
            push(crit, crit, Forward, false, Fixed, false, "ex:fixed-in-P-1");
            if attractor {
                push(crit, crit, Forward, true, Fixed, false, "ex:fixed-in-P-1-mediator");
            } else {
                push(crit, crit, Forward, true, Fixed, true, "thm-min-ts-control");
            }
        }
        let minimal = if crit == VP {
            "ex:fixed-in-P-2-minimal"
        } else {
            "ex:fixed-in-P-2"
        };
        push(crit, crit, Backward, false, Fixed, false, minimal);
        push(crit, crit, Backward, true, Fixed, false, "ex:fixed-in-P-2-mediator");
        // Eliminated component free in the phenotype.
        if crit == VP {
            push(crit, crit, Forward, false, Free, true, "thm-propagation");
            push(crit, crit, Forward, true, Free, true, "thm-propagation");
            push(crit, crit, Backward, false, Free, false, "ex:prop");
            push(crit, crit, Backward, true, Free, true, "thm-perc-in-red-2");
        } else {
            push(crit, crit, Forward, false, Free, false, "ex:free-in-P-CS-to-no-CS");
            if attractor {
                push(
                    crit,
                    crit,
                    Forward,
                    true,
                    Free,
                    false,
                    "ex:free-in-P-CS-to-no-CS-mediator",
                );
                let case = match crit {
                    Criterion::Attractor(UpdateMode::Asynchronous) => "ex:new-cs-mediator-ad",
                    Criterion::Attractor(UpdateMode::General) => "ex:new-cs-mediator-gd",
                    _ => "ex:new-cs-mediator-sd",
                };
                push(crit, crit, Backward, false, Free, false, case);
                push(crit, crit, Backward, true, Free, false, case);
            } else {
                push(crit, crit, Forward, true, Free, true, "thm-min-ts-control");
                push(crit, crit, Backward, false, Free, false, "ex:no-CS-to-CS-not-fixed");
                push(crit, crit, Backward, true, Free, true, "thm-min-ts-control");
            }
        }
    }
    push(VP, SD, Backward, false, Free, false, "ex:prop");
    for c in [AD, GD, MTS] {
        push(VP, c, Backward, false, Free, true, "thm-perc-in-red");
    }
    out
}

/// Table entry for a cell; a cell without position matches only when both
/// placements agree.
pub fn table_entry(cell: &Cell) -> Option<TableEntry> {
    let entries = table();
    match cell.position {
        Some(_) => entries.into_iter().find(|e| e.cell == *cell),
        None => {
            let both: Vec<TableEntry> = [Position::Fixed, Position::Free]
                .into_iter()
                .filter_map(|p| {
                    let c = Cell {
                        position: Some(p),
                        ..*cell
                    };
                    entries.iter().find(|e| e.cell == c).copied()
                })
                .collect();
            match both.as_slice() {
                [a, b] if a.holds == b.holds => Some(TableEntry {
                    cell: *cell,
                    holds: a.holds,
                    source: if a.holds { a.source } else { b.source },
                }),
                [a] => Some(TableEntry { cell: *cell, ..*a }),
                // Mixed status: the cell as a whole can be refuted.
                [a, b] => Some(TableEntry {
                    cell: *cell,
                    holds: false,
                    source: if a.holds { b.source } else { a.source },
                }),
                _ => None,
            }
        }
    }
}

/// A network, a component to eliminate and a phenotype.
#[derive(Clone, Debug)]
pub struct Instance {
    pub network: BooleanNetwork,
    pub eliminated: usize,
    pub phenotype: Subspace,
}

impl Instance {
    pub fn new(network: BooleanNetwork, eliminated: usize, phenotype: Subspace) -> Result<Self> {
        network.check_index(eliminated)?;
        if phenotype.arity() != network.arity() {
            return Err(BnError::ArityMismatch {
                expected: network.arity(),
                found: phenotype.arity(),
            });
        }
        Ok(Instance {
            network,
            eliminated,
            phenotype,
        })
    }

    fn reduced_phenotype(&self) -> Subspace {
        self.phenotype.remove(self.eliminated)
    }
}

/// First strategy in canonical order fixing only components of `pool` that
/// satisfies `criterion`.
pub fn first_strategy(
    net: &BooleanNetwork,
    phenotype: &Subspace,
    criterion: Criterion,
    pool: u64,
) -> Result<Option<Subspace>> {
    for s in candidate_strategies(net.arity(), pool, usize::MAX)? {
        if is_control_strategy(net, &s, phenotype, criterion)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn show(items: impl IntoIterator<Item = impl fmt::Display>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Evidence that `cell` fails on `instance`, or `None` when the implication
/// holds there or the instance is outside the cell.
pub fn refutes(cell: &Cell, instance: &Instance) -> Result<Option<Vec<String>>> {
    let f = &instance.network;
    let e = instance.eliminated;
    let p = &instance.phenotype;
    let fixed = p.is_fixed(e);
    match cell.position {
        Some(Position::Fixed) if !fixed => return Ok(None),
        Some(Position::Free) if fixed => return Ok(None),
        _ => {}
    }
    if cell.mediator && !is_mediator(f, e)? {
        return Ok(None);
    }
    let reduced = eliminate(f, e)?;
    let rp = instance.reduced_phenotype();
    let original_pool = p.free_mask();
    let reduced_pool = rp.free_mask();
    let (hyp_net, hyp_p, hyp_pool, con_net, con_p, con_pool, hyp_side, con_side) = match cell.direction {
        Direction::Forward => (
            f,
            p,
            original_pool & !(1 << e),
            &reduced,
            &rp,
            reduced_pool,
            "original",
            "reduced",
        ),
        Direction::Backward => (&reduced, &rp, reduced_pool, f, p, original_pool, "reduced", "original"),
    };
    let Some(strategy) = first_strategy(hyp_net, hyp_p, cell.hypothesis, hyp_pool)? else {
        return Ok(None);
    };
    if first_strategy(con_net, con_p, cell.conclusion, con_pool)?.is_some() {
        return Ok(None);
    }
    Ok(Some(vec![
        format!(
            "reduced network: {}",
            crate::parser::serialize_network(&reduced).replace('\n', "; ")
        ),
        format!(
            "{} strategy {} for the {} network with phenotype {}",
            cell.hypothesis, strategy, hyp_side, hyp_p
        ),
        format!(
            "no {} strategy for the {} network with phenotype {}",
            cell.conclusion, con_side, con_p
        ),
    ]))
}

/// Evidence that `property` fails on `instance`.
///
/// For cells this is a counterexample to the implication; for theorems it
/// would be a genuine violation.
pub fn check_instance(property: PropertyId, instance: &Instance) -> Result<Option<Vec<String>>> {
    match property {
        PropertyId::Cell(cell) => refutes(&cell, instance),
        PropertyId::Theorem(t) => check_theorem(t, instance),
    }
}

fn strategies_avoiding(arity: usize, phenotype: &Subspace, exclude: Option<usize>) -> Result<Vec<Subspace>> {
    let mut pool = phenotype.free_mask();
    if let Some(e) = exclude {
        pool &= !(1u64 << e);
    }
    candidate_strategies(arity, pool, usize::MAX)
}

fn check_theorem(theorem: Theorem, inst: &Instance) -> Result<Option<Vec<String>>> {
    let f = &inst.network;
    let e = inst.eliminated;
    let p = &inst.phenotype;
    let n = f.arity();
    if crate::graph::is_autoregulated(f, e)? {
        return Ok(None);
    }
    let reduced = eliminate(f, e)?;
    let rp = inst.reduced_phenotype();
    let violation = |lines: Vec<String>| Ok(Some(lines));
    match theorem {
        Theorem::ReductionCommutes => {
            for s in strategies_avoiding(n, &Subspace::full(n), Some(e))? {
                let left = eliminate(&apply_control(f, &s)?, e)?;
                let right = apply_control(&reduced, &s.remove(e))?;
                if !left.same_function(&right)? {
                    return violation(vec![format!("strategy {s}: reduction and control differ")]);
                }
            }
        }
        Theorem::FixedPointBijection => {
            let original: Vec<State> = fixed_points(f)?;
            let projected: BTreeSet<State> = original.iter().map(|x| x.remove(e)).collect();
            let ours: BTreeSet<State> = fixed_points(&reduced)?.into_iter().collect();
            if projected.len() != original.len() || projected != ours {
                return violation(vec![
                    format!("original fixed points {}", show(&original)),
                    format!("reduced fixed points {}", show(&ours)),
                ]);
            }
            for y in &ours {
                let lifted = representative(f, e, y)?;
                if !f.is_fixed_point(&lifted)? {
                    return violation(vec![format!("representative {lifted} of {y} is not fixed")]);
                }
            }
        }
        Theorem::TrapSpaceProjection => {
            let targets = interaction_graph(f)?.targets(e);
            let reduced_mts: BTreeSet<Subspace> = minimal_trap_spaces(&reduced)?.into_iter().collect();
            for t in trap_spaces(f)? {
                if !is_trap_space(&reduced, &t.remove(e))? {
                    return violation(vec![format!("projection of trap space {t} is not a trap space")]);
                }
            }
            for t in minimal_trap_spaces(f)? {
                let targets_fixed = targets.iter().all(|&i| t.is_fixed(i));
                if (t.is_fixed(e) || targets_fixed) && !reduced_mts.contains(&t.remove(e)) {
                    return violation(vec![format!(
                        "projection of minimal trap space {t} is not minimal in the reduction"
                    )]);
                }
            }
        }
        Theorem::MinimalTrapSpaces => {
            if is_mediator(f, e)? {
                let report = strictly_preserves_mts(f, e)?;
                if !report.preserved {
                    let lost = report
                        .matches
                        .iter()
                        .filter(|m| m.original.is_none())
                        .map(|m| m.reduced);
                    return violation(vec![format!("unmatched reduced minimal trap spaces {}", show(lost))]);
                }
            }
        }
        Theorem::TrapSets => {
            for mode in [UpdateMode::Asynchronous, UpdateMode::General] {
                for start in Subspace::full(n).states() {
                    let set = reachable(f, start, mode)?;
                    if let Some(msg) = trap_set_projects(f, &reduced, e, &set, mode)? {
                        return violation(vec![format!("{mode}: reachable set of {start}: {msg}")]);
                    }
                }
            }
        }
        Theorem::NoTwoAttractors => {
            for mode in [UpdateMode::Asynchronous, UpdateMode::General] {
                let attrs = attractors(f, mode)?;
                for a in &attrs {
                    let shadow: BTreeSet<State> = a.states().iter().map(|x| x.remove(e)).collect();
                    let inside = attrs
                        .iter()
                        .filter(|b| b.states().iter().all(|x| shadow.contains(&x.remove(e))))
                        .count();
                    if inside > 1 {
                        return violation(vec![format!("{mode}: cylinder of {a} contains {inside} attractors")]);
                    }
                }
            }
        }
        Theorem::MtsControl => {
            if is_mediator(f, e)? {
                for s in strategies_avoiding(n, p, Some(e))? {
                    if is_control_strategy(f, &s, p, MTS)? && !is_control_strategy(&reduced, &s.remove(e), &rp, MTS)? {
                        return violation(vec![format!("projection of MTS strategy {s} fails")]);
                    }
                }
                if !p.is_fixed(e) {
                    for s in strategies_avoiding(n - 1, &rp, None)? {
                        if is_control_strategy(&reduced, &s, &rp, MTS)?
                            && !is_control_strategy(f, &s.extend_free(e), p, MTS)?
                        {
                            return violation(vec![format!("extension of reduced MTS strategy {s} fails")]);
                        }
                    }
                }
            }
        }
        Theorem::Propagation => {
            for s in strategies_avoiding(n, p, Some(e))? {
                if is_control_strategy(f, &s, p, VP)? && !is_control_strategy(&reduced, &s.remove(e), &rp, VP)? {
                    return violation(vec![format!("projection of VP strategy {s} fails")]);
                }
            }
        }
        Theorem::PropagationLemma => {
            for t in trap_spaces(f)? {
                let mut original = t;
                let mut shadow = t.remove(e);
                for k in 1..=n + 1 {
                    original = percolate(f, &original)?;
                    shadow = percolate(&reduced, &shadow)?;
                    if original.is_subset_of(p) && !shadow.is_subset_of(&rp) {
                        return violation(vec![format!(
                            "trap space {t}, step {k}: {original} inside {p} but {shadow} not inside {rp}"
                        )]);
                    }
                }
            }
        }
        Theorem::PropagationInReduction => {
            if !p.is_fixed(e) {
                if let Some(s) = first_strategy(&reduced, &rp, VP, rp.free_mask())? {
                    for c in [AD, GD, MTS] {
                        if first_strategy(f, p, c, p.free_mask())?.is_none() {
                            return violation(vec![format!("reduced VP strategy {s} but no {c} strategy")]);
                        }
                    }
                }
            }
        }
        Theorem::PropagationInReductionMediator => {
            if !p.is_fixed(e) && is_mediator(f, e)? {
                for s in strategies_avoiding(n - 1, &rp, None)? {
                    if is_control_strategy(&reduced, &s, &rp, VP)? && !is_control_strategy(f, &s.extend_free(e), p, VP)?
                    {
                        return violation(vec![format!("extension of reduced VP strategy {s} fails")]);
                    }
                }
            }
        }
        Theorem::VpImplications => {
            for s in strategies_avoiding(n, p, None)? {
                if !is_control_strategy(f, &s, p, VP)? {
                    continue;
                }
                for c in [SD, AD, GD, MTS] {
                    if !is_control_strategy(f, &s, p, c)? {
                        return violation(vec![format!("VP strategy {s} is not a {c} strategy")]);
                    }
                }
            }
            // Propagation closure always contains every attractor.
            let closure = propagation_closure(f)?;
            for mode in UpdateMode::ALL {
                if let Some(a) = attractors(f, mode)?
                    .into_iter()
                    .find(|a| a.states().iter().any(|x| !closure.contains(x)))
                {
                    return violation(vec![format!("{mode} attractor {a} leaves closure {closure}")]);
                }
            }
        }
    }
    Ok(None)
}

fn reachable(net: &BooleanNetwork, start: State, mode: UpdateMode) -> Result<BTreeSet<State>> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in successors(net, &x, mode)? {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

fn trap_set_projects(
    f: &BooleanNetwork,
    reduced: &BooleanNetwork,
    e: usize,
    set: &BTreeSet<State>,
    mode: UpdateMode,
) -> Result<Option<String>> {
    let shadow: BTreeSet<State> = set.iter().map(|x| x.remove(e)).collect();
    for x in &shadow {
        if !set.contains(&representative(f, e, x)?) {
            return Ok(Some(format!("representative of {x} is outside")));
        }
        if let Some(y) = successors(reduced, x, mode)?.into_iter().find(|y| !shadow.contains(y)) {
            return Ok(Some(format!("projection is left by {x} -> {y}")));
        }
    }
    Ok(None)
}
