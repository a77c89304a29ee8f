//! Control strategies: fixing components to constants and checking whether
//! the controlled network is confined to a phenotype.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{attractors_with_limits, Attractor, UpdateMode};
use crate::error::{BnError, Result};
use crate::expr::BoolExpr;
use crate::limits::Limits;
use crate::network::BooleanNetwork;
use crate::state::Subspace;
use crate::trapspaces::{minimal_trap_spaces_with_limits, percolation_trace, PercolationTrace};

/// Largest candidate pool `find_control_strategies` will enumerate.
pub const MAX_CANDIDATES: u64 = 4_782_969; // 3^14

/// `C(f, S)`: rules of components fixed in `strategy` become constants.
pub fn apply_control(net: &BooleanNetwork, strategy: &Subspace) -> Result<BooleanNetwork> {
    check_arity(net, strategy)?;
    let rules = (0..net.arity())
        .map(|i| match strategy.get(i).value() {
            Some(b) => BoolExpr::Const(b),
            None => net.rule(i).clone(),
        })
        .collect();
    net.with_rules(rules)
}

fn check_arity(net: &BooleanNetwork, space: &Subspace) -> Result<()> {
    if space.arity() != net.arity() {
        return Err(BnError::ArityMismatch {
            expected: net.arity(),
            found: space.arity(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Attractor(UpdateMode),
    MinimalTrapSpace,
    ValuePropagation,
}

impl Criterion {
    /// Every criterion, in report order.
    pub const ALL: [Criterion; 5] = [
        Criterion::Attractor(UpdateMode::Synchronous),
        Criterion::Attractor(UpdateMode::Asynchronous),
        Criterion::Attractor(UpdateMode::General),
        Criterion::MinimalTrapSpace,
        Criterion::ValuePropagation,
    ];

    /// Short label: `SD`, `AD`, `GD`, `MTS` or `VP`.
    pub fn label(self) -> &'static str {
        match self {
            Criterion::Attractor(mode) => mode.label(),
            Criterion::MinimalTrapSpace => "MTS",
            Criterion::ValuePropagation => "VP",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Attractor(mode) => write!(f, "attractor:{mode}"),
            Criterion::MinimalTrapSpace => f.write_str("mts"),
            Criterion::ValuePropagation => f.write_str("vp"),
        }
    }
}

impl FromStr for Criterion {
    type Err = BnError;

    fn from_str(s: &str) -> Result<Criterion> {
        let lower = s.to_ascii_lowercase();
        if let Some(mode) = lower.strip_prefix("attractor:") {
            return Ok(Criterion::Attractor(mode.parse()?));
        }
        match lower.as_str() {
            "sd" => Ok(Criterion::Attractor(UpdateMode::Synchronous)),
            "ad" => Ok(Criterion::Attractor(UpdateMode::Asynchronous)),
            "gd" => Ok(Criterion::Attractor(UpdateMode::General)),
            "mts" => Ok(Criterion::MinimalTrapSpace),
            "vp" => Ok(Criterion::ValuePropagation),
            _ => Err(BnError::InvalidArgument(format!("unknown criterion `{s}`"))),
        }
    }
}

impl Serialize for Criterion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Supporting evidence for a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// First attractor (in canonical order) leaving the phenotype, if any.
    Attractors { count: usize, outside: Option<Attractor> },
    /// First minimal trap space not inside the phenotype, if any.
    MinimalTrapSpaces { count: usize, outside: Option<Subspace> },
    /// Propagation from the full space on the controlled network.
    Propagation { trace: PercolationTrace, result: Subspace },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: Criterion,
    pub holds: bool,
    pub witness: Witness,
}

/// Checks one criterion for the controlled network `C(net, strategy)`.
pub fn check_strategy(
    net: &BooleanNetwork,
    strategy: &Subspace,
    phenotype: &Subspace,
    criterion: Criterion,
    limits: &Limits,
) -> Result<Verdict> {
    check_arity(net, phenotype)?;
    let controlled = apply_control(net, strategy)?;
    verdict_on_controlled(&controlled, phenotype, criterion, limits)
}

fn verdict_on_controlled(
    controlled: &BooleanNetwork,
    phenotype: &Subspace,
    criterion: Criterion,
    limits: &Limits,
) -> Result<Verdict> {
    let (holds, witness) = match criterion {
        Criterion::Attractor(mode) => {
            let attrs = attractors_with_limits(controlled, mode, limits)?;
            let outside = attrs
                .iter()
                .find(|a| !a.states().iter().all(|x| phenotype.contains(x)))
                .cloned();
            (
                outside.is_none(),
                Witness::Attractors {
                    count: attrs.len(),
                    outside,
                },
            )
        }
        Criterion::MinimalTrapSpace => {
            let mts = minimal_trap_spaces_with_limits(controlled, limits)?;
            let outside = mts.iter().find(|t| !t.is_subset_of(phenotype)).copied();
            (
                outside.is_none(),
                Witness::MinimalTrapSpaces {
                    count: mts.len(),
                    outside,
                },
            )
        }
        Criterion::ValuePropagation => {
            let trace = percolation_trace(controlled, &Subspace::full(controlled.arity()))?;
            // The full space is a trap space, so the iteration always stabilises.
            let result = trace.fixpoint().expect("propagation from the full space is monotone");
            (result.is_subset_of(phenotype), Witness::Propagation { trace, result })
        }
    };
    Ok(Verdict {
        criterion,
        holds,
        witness,
    })
}

/// Every attractor of `mode` on `C(net, strategy)` lies in `phenotype`.
pub fn is_attractor_cs(
    net: &BooleanNetwork,
    strategy: &Subspace,
    phenotype: &Subspace,
    mode: UpdateMode,
) -> Result<bool> {
    Ok(check_strategy(net, strategy, phenotype, Criterion::Attractor(mode), &Limits::default())?.holds)
}

/// Every minimal trap space of `C(net, strategy)` lies in `phenotype`.
pub fn is_mts_cs(net: &BooleanNetwork, strategy: &Subspace, phenotype: &Subspace) -> Result<bool> {
    Ok(check_strategy(
        net,
        strategy,
        phenotype,
        Criterion::MinimalTrapSpace,
        &Limits::default(),
    )?
    .holds)
}

/// The propagation closure of `C(net, strategy)` lies in `phenotype`.
pub fn is_vp_cs(net: &BooleanNetwork, strategy: &Subspace, phenotype: &Subspace) -> Result<bool> {
    Ok(check_strategy(
        net,
        strategy,
        phenotype,
        Criterion::ValuePropagation,
        &Limits::default(),
    )?
    .holds)
}

pub fn is_control_strategy(
    net: &BooleanNetwork,
    strategy: &Subspace,
    phenotype: &Subspace,
    criterion: Criterion,
) -> Result<bool> {
    Ok(check_strategy(net, strategy, phenotype, criterion, &Limits::default())?.holds)
}

/// All subspaces fixing only components in `pool`, with at most `max_fixed`
/// fixed coordinates, in canonical order.
pub fn candidate_strategies(arity: usize, pool: u64, max_fixed: usize) -> Result<Vec<Subspace>> {
    let free: Vec<usize> = (0..arity).filter(|&i| pool >> i & 1 == 1).collect();
    let max_fixed = max_fixed.min(free.len());
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for k in 0..=max_fixed {
        total = total.saturating_add(binom.saturating_mul(1 << k));
        binom = binom * (free.len() - k) as u64 / (k as u64 + 1);
    }
    if total > MAX_CANDIDATES {
        return Err(BnError::Capacity {
            what: "strategy enumeration",
            arity: free.len(),
            cap: 14,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    // Walk every subset of the pool by its fixed mask, then every assignment.
    let mut mask = 0u64;
    loop {
        if (mask.count_ones() as usize) <= max_fixed {
            let mut values = mask;
            loop {
                out.push(Subspace::new(mask, values, arity));
                if values == 0 {
                    break;
                }
                values = (values - 1) & mask;
            }
        }
        if mask == pool {
            break;
        }
        mask = (mask.wrapping_sub(pool)) & pool;
    }
    out.sort();
    Ok(out)
}

/// Options for [`find_control_strategies`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_fixed: usize,
    pub minimal: bool,
    pub limits: Limits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_fixed: usize::MAX,
            minimal: false,
            limits: Limits::default(),
        }
    }
}

/// Strategies fixing only components free in `phenotype`, in canonical order.
///
/// `max_fixed` is clamped to the number of such components. With `minimal`,
/// strategies that extend another returned strategy are dropped.
pub fn find_control_strategies(
    net: &BooleanNetwork,
    phenotype: &Subspace,
    criterion: Criterion,
    options: &SearchOptions,
) -> Result<Vec<Subspace>> {
    check_arity(net, phenotype)?;
    let candidates = candidate_strategies(net.arity(), phenotype.free_mask(), options.max_fixed)?;
    filter_strategies(net, phenotype, criterion, candidates, options)
}

/// Checks the given candidates in parallel, keeping their order.
pub fn filter_strategies(
    net: &BooleanNetwork,
    phenotype: &Subspace,
    criterion: Criterion,
    candidates: Vec<Subspace>,
    options: &SearchOptions,
) -> Result<Vec<Subspace>> {
    let verdicts: Vec<bool> = candidates
        .par_iter()
        .map(|s| Ok(check_strategy(net, s, phenotype, criterion, &options.limits)?.holds))
        .collect::<Result<_>>()?;
    let passing = candidates
        .into_iter()
        .zip(verdicts)
        .filter_map(|(s, ok)| ok.then_some(s));
    if !options.minimal {
        return Ok(passing.collect());
    }
    let mut kept: Vec<Subspace> = Vec::new();
    for s in passing {
        if !kept.iter().any(|k| s.is_subset_of(k)) {
            kept.push(s);
        }
    }
    Ok(kept)
}

/// Every verdict for one strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlReport {
    pub strategy: Subspace,
    pub phenotype: Subspace,
    /// The strategy fixes a component that the phenotype fixes too.
    pub overlaps_phenotype: bool,
    /// The phenotype fixes nothing, so every strategy passes.
    pub vacuous_phenotype: bool,
    pub verdicts: Vec<Verdict>,
}

impl ControlReport {
    pub fn verdict(&self, criterion: Criterion) -> Option<bool> {
        self.verdicts.iter().find(|v| v.criterion == criterion).map(|v| v.holds)
    }
}

pub fn control_report(net: &BooleanNetwork, phenotype: &Subspace, strategy: &Subspace) -> Result<ControlReport> {
    control_report_with_limits(net, phenotype, strategy, &Limits::default())
}

pub fn control_report_with_limits(
    net: &BooleanNetwork,
    phenotype: &Subspace,
    strategy: &Subspace,
    limits: &Limits,
) -> Result<ControlReport> {
    check_arity(net, phenotype)?;
    let controlled = apply_control(net, strategy)?;
    let verdicts = Criterion::ALL
        .iter()
        .map(|&c| verdict_on_controlled(&controlled, phenotype, c, limits))
        .collect::<Result<_>>()?;
    Ok(ControlReport {
        strategy: *strategy,
        phenotype: *phenotype,
        overlaps_phenotype: strategy.overlaps_fixed(phenotype),
        vacuous_phenotype: phenotype.is_full(),
        verdicts,
    })
}
