//! Worked examples with their expected artifacts.

use std::collections::BTreeSet;

use serde::Serialize;

use super::properties::{check_instance, Instance, PropertyId};
use crate::control::{apply_control, check_strategy, find_control_strategies, Criterion, SearchOptions};
use crate::dynamics::{attractors, fixed_points, is_trap_set, Attractor, UpdateMode};
use crate::error::{BnError, Result};
use crate::limits::Limits;
use crate::network::BooleanNetwork;
use crate::parser::{parse_network, serialize_network};
use crate::reduction::{eliminate, is_linear, is_mediator, strictly_preserves_mts};
use crate::state::{State, Subspace};
use crate::trapspaces::{minimal_trap_spaces, percolate, propagation_closure, trap_spaces};

/// Which network of a case a check applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Original,
    Reduced,
}

const SD: UpdateMode = UpdateMode::Synchronous;
const AD: UpdateMode = UpdateMode::Asynchronous;
const GD: UpdateMode = UpdateMode::General;
const MODES: &[UpdateMode] = &[SD, AD, GD];

const C_SD: Criterion = Criterion::Attractor(SD);
const C_AD: Criterion = Criterion::Attractor(AD);
const C_GD: Criterion = Criterion::Attractor(GD);
const C_MTS: Criterion = Criterion::MinimalTrapSpace;
const C_VP: Criterion = Criterion::ValuePropagation;
const ALL: &[Criterion] = &[C_SD, C_AD, C_GD, C_MTS, C_VP];
const ATTRACTOR_AND_MTS: &[Criterion] = &[C_SD, C_AD, C_GD, C_MTS];

#[derive(Clone, Debug)]
pub enum Check {
    /// Exact text of the reduction.
    ReducesTo(&'static str),
    /// The reduction computes the same function as these rules.
    ReducesToEquivalent(&'static str),
    TrapSpaces(Side, &'static [&'static str]),
    MinimalTrapSpaces(Side, &'static [&'static str]),
    PropagationClosure(Side, &'static str),
    FixedPoints(Side, &'static [&'static str]),
    Attractors(Side, &'static [UpdateMode], &'static [&'static [&'static str]]),
    /// The complete list of strategies fixing only phenotype-free components.
    Strategies(Side, &'static [Criterion], &'static [&'static str]),
    /// Verdicts for one strategy against the side's phenotype.
    Verdicts(Side, &'static str, &'static [(Criterion, bool)]),
    Mediator(bool),
    Linear(bool),
    MtsPreserved(bool),
    TrapSet(Side, UpdateMode, &'static [&'static str], bool),
    /// Number of attractors of the original network inside the cylinder over
    /// the projection of the given attractor.
    CylinderAttractors(UpdateMode, &'static [&'static str], usize),
    /// Attractors of the controlled original network, projected onto the
    /// components the strategy leaves free.
    InducedAttractors(
        UpdateMode,
        &'static [(&'static str, &'static [&'static [&'static str]])],
    ),
    /// One percolation step from `seed`.
    Percolates(Side, &'static str, &'static str),
    /// Rules after applying a strategy to the original network.
    Controlled(&'static str, &'static str),
    /// The case refutes this summary-table cell.
    Refutes(&'static str),
}

#[derive(Clone, Debug)]
pub struct PaperCase {
    pub id: &'static str,
    pub location: &'static str,
    pub network: &'static str,
    /// Component to eliminate; `None` when every component is autoregulated.
    pub eliminated: Option<usize>,
    pub phenotype: Option<&'static str>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: &'static str,
    pub location: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

const FIG1A: &str = "x1, x1 & !x2 | x1 & x3\nx2, x1 & !x3\nx3, x2";
const MED4: &str = "x1, x3 | x1 & x2 | !x1 & !x2\nx2, x4 | x2 & !x1\nx3, x3 & !x1 | !x1 & !x2\nx4, x3";
const PROP: &str = "x1, x1 & !x2 | x1 & !x3 | x2 & x3 & !x1\nx2, x1 & !x3\nx3, x1";
const EXF: &str = "x1, !x1 & !x2 | !x1 & !x3 | x2 & !x3\nx2, x1 & !x2 & !x3 | !x1 & !x2 & x3\nx3, x1 & !x2 | !x1 & x2";
const EXNO: &str = "x1, x2 & !x3 | x2 & !x4 | x3 & x4 & !x2\nx2, x1 & !x3 | x1 & !x4\nx3, x1 & !x4 | x4 & !x1\nx4, x2 & x3 | x1 & !x2 | !x2 & !x3";
const NEW_AD: &str = "x1, x1 & x2 | x1 & !x3 | x3 & !x1 & !x2\nx2, !x2 & !x3 | x2 & x3 & !x1\nx3, !x3 & !x4\nx4, !x2";
const NEW_GD: &str = "x1, x1 & x3 | x1 & !x4 | x4 & !x1 & !x3\nx2, !x2\nx3, x2 | !x5\nx4, x1 & x2 & x3 | x1 & x3 & !x4 | x2 & x3 & !x4\nx5, !x4";
const NEW_SD: &str = "x1, x1 & !x2 | x2 & !x1\nx2, !x2 & !x3\nx3, !x1";
const LINMED: &str = "x1, x2 & x3\nx2, 0\nx3, x1";

fn case(
    id: &'static str,
    location: &'static str,
    network: &'static str,
    eliminated: Option<usize>,
    phenotype: Option<&'static str>,
    checks: Vec<Check>,
) -> PaperCase {
    PaperCase {
        id,
        location,
        network,
        eliminated,
        phenotype,
        checks,
    }
}

/// The embedded corpus.
pub fn paper_cases() -> Vec<PaperCase> {
    use Check::*;
    use Side::*;
    vec![
        case(
            "fig:ex-all",
            "running example",
            FIG1A,
            Some(2),
            None,
            vec![
                ReducesTo("x1, x1\nx2, x1 & !x2"),
                TrapSpaces(Original, &["***", "0**", "00*", "000"]),
                MinimalTrapSpaces(Original, &["000"]),
                MinimalTrapSpaces(Reduced, &["1*", "00"]),
                Attractors(Original, MODES, &[&["000"]]),
                Attractors(Reduced, MODES, &[&["00"], &["10", "11"]]),
                FixedPoints(Original, &["000"]),
                FixedPoints(Reduced, &["00"]),
                Mediator(false),
                MtsPreserved(false),
            ],
        ),
        case(
            "ex:attrs-prop",
            "attractor control without propagation",
            FIG1A,
            Some(2),
            Some("0**"),
            vec![
                Verdicts(
                    Original,
                    "***",
                    &[(C_SD, true), (C_AD, true), (C_GD, true), (C_MTS, true), (C_VP, false)],
                ),
                PropagationClosure(Original, "***"),
            ],
        ),
        case(
            "fig:order",
            "control before and after elimination",
            "x1, x1 | x2\nx2, x1",
            Some(1),
            None,
            vec![Controlled("*1", "x1, x1 | x2\nx2, 1"), ReducesTo("x1, x1")],
        ),
        case(
            "ex:attrs-no-mts",
            "attractor control without MTS control",
            "x1, x2 & !x3\nx2, x3 & !x2\nx3, x2 | !x3",
            Some(0),
            Some("0**"),
            vec![
                Attractors(Original, &[AD], &[&["000", "001", "011"]]),
                TrapSpaces(Original, &["***"]),
                Verdicts(Original, "***", &[(C_AD, true), (C_MTS, false), (C_VP, false)]),
            ],
        ),
        case(
            "ex:attrs-no-mts-sync",
            "synchronous attractor control",
            "x1, x2 & x3\nx2, x3\nx3, !x3",
            None,
            Some("0**"),
            vec![
                Attractors(Original, &[SD], &[&["001", "010"]]),
                Verdicts(Original, "***", &[(C_SD, true)]),
            ],
        ),
        case(
            "ex:attrs-no-mts-general",
            "general asynchronous attractor control",
            "x1, x2 & x3 & x4\nx2, x4 & (x2 | !x1 & !x3)\nx3, !x1 & (x2 & x3 | !x2 & !x4)\nx4, x3 & !x1",
            Some(3),
            Some("0***"),
            vec![Verdicts(
                Original,
                "****",
                &[(C_GD, true), (C_MTS, false), (C_VP, false)],
            )],
        ),
        case(
            "ex:mts-no-attrs",
            "MTS control without attractor control",
            "x1, (x1 | x2) & !x3\nx2, !x1 & (x2 | x3)\nx3, !x2 & (x1 | x3)",
            None,
            Some("0**"),
            vec![
                Attractors(
                    Original,
                    MODES,
                    &[&["000"], &["001", "010", "011", "100", "101", "110"]],
                ),
                MinimalTrapSpaces(Original, &["000"]),
                TrapSpaces(Original, &["***", "000"]),
                Verdicts(
                    Original,
                    "***",
                    &[
                        (C_SD, false),
                        (C_AD, false),
                        (C_GD, false),
                        (C_MTS, true),
                        (C_VP, false),
                    ],
                ),
            ],
        ),
        case(
            "ex:trap-set-sync",
            "synchronous trap set lost by elimination",
            "x1, x1 & !x3\nx2, 0\nx3, 0",
            Some(2),
            None,
            vec![
                ReducesTo("x1, x1\nx2, 0"),
                TrapSet(Original, SD, &["000", "111"], true),
                TrapSet(Reduced, SD, &["00", "11"], false),
            ],
        ),
        case(
            "ex:synch",
            "synchronous cylinder with several attractors",
            "x1, x2\nx2, x1",
            Some(1),
            None,
            vec![
                Attractors(Original, &[SD], &[&["00"], &["01", "10"], &["11"]]),
                CylinderAttractors(SD, &["01", "10"], 3),
                CylinderAttractors(AD, &["00"], 1),
            ],
        ),
        case(
            "ex:lemma-propagation",
            "propagation from a subspace that is not a trap space",
            "x1, x1 & x2\nx2, x1",
            Some(1),
            Some("0*"),
            vec![
                Percolates(Original, "*0", "0*"),
                Percolates(Reduced, "*", "*"),
                ReducesTo("x1, x1"),
            ],
        ),
        case(
            "ex:prop",
            "value propagation lost in the original network",
            PROP,
            Some(2),
            Some("0**"),
            vec![
                ReducesTo("x1, x1 & !x2\nx2, 0"),
                Strategies(Original, &[C_SD, C_VP], &[]),
                Strategies(Original, &[C_AD, C_GD, C_MTS], &["*1*"]),
                Strategies(Reduced, ALL, &["*1"]),
                Verdicts(
                    Original,
                    "*1*",
                    &[(C_SD, false), (C_AD, true), (C_GD, true), (C_MTS, true), (C_VP, false)],
                ),
                Refutes("VP-backward-general-free"),
                Refutes("VP/SD-backward-general-free"),
            ],
        ),
        case(
            "ex:fixed-in-P-1",
            "fixed component, strategy lost",
            FIG1A,
            Some(2),
            Some("0*0"),
            vec![
                Strategies(Original, ATTRACTOR_AND_MTS, &["***"]),
                Strategies(Original, &[C_VP], &[]),
                Strategies(Reduced, ALL, &[]),
                Refutes("SD-forward-general-fixed"),
                Refutes("AD-forward-general-fixed"),
                Refutes("GD-forward-general-fixed"),
                Refutes("MTS-forward-general-fixed"),
            ],
        ),
        case(
            "ex:fixed-in-P-1-mediator",
            "fixed mediator, strategy lost",
            MED4,
            Some(3),
            Some("0**0"),
            vec![
                ReducesToEquivalent("x1, x3 | x1 & x2 | !x1 & !x2\nx2, x3 | x2 & !x1\nx3, x3 & !x1 | !x1 & !x2"),
                Mediator(true),
                Attractors(Original, MODES, &[&["0100"]]),
                Attractors(Reduced, &[SD], &[&["000", "100", "101", "110"], &["010"]]),
                Attractors(
                    Reduced,
                    &[AD, GD],
                    &[&["000", "001", "011", "100", "101", "110", "111"], &["010"]],
                ),
                MinimalTrapSpaces(Reduced, &["010"]),
                Strategies(Original, ATTRACTOR_AND_MTS, &["****"]),
                Strategies(Reduced, &[C_SD, C_AD, C_GD, C_VP], &[]),
                Strategies(Reduced, &[C_MTS], &["***"]),
                Refutes("SD-forward-mediator-fixed"),
                Refutes("AD-forward-mediator-fixed"),
                Refutes("GD-forward-mediator-fixed"),
            ],
        ),
        case(
            "ex:fixed-in-P-2",
            "fixed component, strategy gained",
            FIG1A,
            Some(2),
            Some("*01"),
            vec![
                Strategies(Original, ALL, &[]),
                Strategies(Reduced, ALL, &["0*"]),
                Refutes("SD-backward-general-fixed"),
                Refutes("AD-backward-general-fixed"),
                Refutes("GD-backward-general-fixed"),
                Refutes("MTS-backward-general-fixed"),
                Refutes("VP-backward-general-fixed"),
            ],
        ),
        case(
            "ex:fixed-in-P-2-minimal",
            "fixed component, two constants",
            "x1, 0\nx2, 0",
            Some(1),
            Some("*1"),
            vec![
                ReducesTo("x1, 0"),
                Strategies(Original, ALL, &[]),
                Strategies(Reduced, ALL, &["*", "0", "1"]),
                Refutes("SD-backward-general-fixed"),
                Refutes("AD-backward-general-fixed"),
                Refutes("GD-backward-general-fixed"),
                Refutes("MTS-backward-general-fixed"),
                Refutes("VP-backward-general-fixed"),
            ],
        ),
        case(
            "ex:fixed-in-P-2-mediator",
            "fixed linear mediator, strategy gained",
            LINMED,
            Some(2),
            Some("0*1"),
            vec![
                ReducesToEquivalent("x1, x1 & x2\nx2, 0"),
                Mediator(true),
                Linear(true),
                MtsPreserved(true),
                Strategies(Original, ALL, &[]),
                Strategies(Reduced, ALL, &["**", "*0"]),
                Refutes("SD-backward-mediator-fixed"),
                Refutes("AD-backward-mediator-fixed"),
                Refutes("GD-backward-mediator-fixed"),
                Refutes("MTS-backward-mediator-fixed"),
                Refutes("VP-backward-mediator-fixed"),
            ],
        ),
        case(
            "ex:free-in-P-CS-to-no-CS",
            "free component, strategy lost",
            FIG1A,
            Some(2),
            Some("0**"),
            vec![
                Strategies(Original, ATTRACTOR_AND_MTS, &["***", "**0", "*10"]),
                Strategies(Original, &[C_VP], &["*10"]),
                Strategies(Reduced, ALL, &[]),
                Refutes("SD-forward-general-free"),
                Refutes("AD-forward-general-free"),
                Refutes("GD-forward-general-free"),
                Refutes("MTS-forward-general-free"),
            ],
        ),
        case(
            "ex:free-in-P-CS-to-no-CS-mediator",
            "free mediator, strategy lost",
            MED4,
            Some(3),
            Some("0***"),
            vec![
                Strategies(Original, ATTRACTOR_AND_MTS, &["****"]),
                Strategies(Original, &[C_VP], &[]),
                Strategies(Reduced, &[C_SD, C_AD, C_GD, C_VP], &[]),
                Strategies(Reduced, &[C_MTS], &["***"]),
                Refutes("SD-forward-mediator-free"),
                Refutes("AD-forward-mediator-free"),
                Refutes("GD-forward-mediator-free"),
            ],
        ),
        case(
            "ex:free-in-P-no-CS-to-CS",
            "free component, union of strategies",
            EXF,
            Some(2),
            Some("*0*"),
            vec![
                ReducesToEquivalent("x1, x1 & x2 | !x1 & !x2\nx2, 0"),
                Verdicts(Reduced, "**", &[(C_VP, true)]),
                Verdicts(
                    Original,
                    "***",
                    &[
                        (C_SD, false),
                        (C_AD, false),
                        (C_GD, false),
                        (C_MTS, false),
                        (C_VP, false),
                    ],
                ),
                Verdicts(
                    Original,
                    "**0",
                    &[
                        (C_SD, false),
                        (C_AD, false),
                        (C_GD, false),
                        (C_MTS, false),
                        (C_VP, false),
                    ],
                ),
                Verdicts(
                    Original,
                    "**1",
                    &[
                        (C_SD, false),
                        (C_AD, false),
                        (C_GD, false),
                        (C_MTS, false),
                        (C_VP, false),
                    ],
                ),
                Verdicts(
                    Original,
                    "0**",
                    &[(C_SD, false), (C_AD, true), (C_GD, true), (C_MTS, true), (C_VP, false)],
                ),
                Verdicts(
                    Original,
                    "1**",
                    &[(C_SD, false), (C_AD, true), (C_GD, true), (C_MTS, true), (C_VP, false)],
                ),
                Strategies(Original, &[C_SD, C_VP], &["0*0", "1*1"]),
                Strategies(Original, &[C_AD, C_GD, C_MTS], &["0**", "1**", "0*0", "1*1"]),
                Strategies(Reduced, ALL, &["**", "0*", "1*"]),
            ],
        ),
        case(
            "ex:no-CS-to-CS-not-fixed",
            "free component, strategy gained",
            EXNO,
            Some(3),
            Some("00**"),
            vec![
                ReducesToEquivalent(
                    "x1, x2 & !x3 | x1 & x3 & !x2\nx2, x1 & !x3\nx3, x1 & x2 & !x3 | x2 & x3 & !x1 | !x1 & !x2 & !x3",
                ),
                Attractors(Reduced, &[AD, GD], &[&["000", "001"]]),
                MinimalTrapSpaces(Reduced, &["00*"]),
                MinimalTrapSpaces(Original, &["****"]),
                Verdicts(
                    Reduced,
                    "***",
                    &[(C_AD, true), (C_GD, true), (C_MTS, true), (C_VP, false)],
                ),
                Strategies(Original, ALL, &[]),
                Strategies(Reduced, &[C_AD, C_GD, C_MTS], &["***"]),
                InducedAttractors(
                    AD,
                    &[
                        (
                            "****",
                            &[&[
                                "0000", "0001", "0010", "0011", "0111", "1001", "1011", "1100", "1101", "1110", "1111",
                            ]],
                        ),
                        ("***0", &[&["000"], &["111"]]),
                        ("***1", &[&["110"]]),
                        ("**0*", &[&["001"], &["110"]]),
                        ("**00", &[&["00"], &["11"]]),
                        ("**01", &[&["00"], &["11"]]),
                        ("**1*", &[&["000"], &["101"]]),
                        ("**10", &[&["00"], &["11"]]),
                        ("**11", &[&["10"]]),
                    ],
                ),
                Refutes("MTS-backward-general-free"),
                Refutes("AD-backward-general-free"),
                Refutes("GD-backward-general-free"),
            ],
        ),
        case(
            "ex:new-cs-mediator-ad",
            "asynchronous strategy gained, mediator",
            NEW_AD,
            Some(3),
            Some("0***"),
            vec![
                Mediator(true),
                Linear(true),
                Strategies(Original, &[C_AD], &[]),
                Strategies(Reduced, &[C_AD], &["***"]),
                Refutes("AD-backward-mediator-free"),
                Refutes("AD-backward-general-free"),
            ],
        ),
        case(
            "ex:new-cs-mediator-gd",
            "general asynchronous strategy gained, mediator",
            NEW_GD,
            Some(4),
            Some("0****"),
            vec![
                Mediator(true),
                Linear(true),
                Strategies(Original, &[C_GD], &[]),
                Strategies(Reduced, &[C_GD], &["****"]),
                Refutes("GD-backward-mediator-free"),
                Refutes("GD-backward-general-free"),
            ],
        ),
        case(
            "ex:new-cs-mediator-sd",
            "synchronous strategy gained, mediator",
            NEW_SD,
            Some(2),
            Some("0**"),
            vec![
                Mediator(true),
                Linear(true),
                Strategies(Original, &[C_SD], &[]),
                Strategies(Reduced, &[C_SD], &["**"]),
                Refutes("SD-backward-mediator-free"),
                Refutes("SD-backward-general-free"),
            ],
        ),
    ]
}

struct Context {
    original: BooleanNetwork,
    reduced: Option<(usize, BooleanNetwork)>,
    phenotype: Option<Subspace>,
}

impl Context {
    fn eliminated(&self) -> Result<usize> {
        self.reduced
            .as_ref()
            .map(|(e, _)| *e)
            .ok_or_else(|| BnError::InvalidArgument("case has no eliminated component".into()))
    }

    fn reduced(&self) -> Result<&BooleanNetwork> {
        self.reduced
            .as_ref()
            .map(|(_, r)| r)
            .ok_or_else(|| BnError::InvalidArgument("case has no eliminated component".into()))
    }

    fn net(&self, side: Side) -> Result<&BooleanNetwork> {
        match side {
            Side::Original => Ok(&self.original),
            Side::Reduced => self.reduced(),
        }
    }

    fn phenotype(&self, side: Side) -> Result<Subspace> {
        let p = self
            .phenotype
            .ok_or_else(|| BnError::InvalidArgument("case has no phenotype".into()))?;
        match side {
            Side::Original => Ok(p),
            Side::Reduced => Ok(p.remove(self.eliminated()?)),
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Original => "original",
        Side::Reduced => "reduced",
    }
}

/// Attractors as sorted lists of state labels, compared without regard to order.
fn normalize(sets: impl IntoIterator<Item = Vec<String>>) -> BTreeSet<BTreeSet<String>> {
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

fn show_sets(sets: &BTreeSet<BTreeSet<String>>) -> String {
    join(
        sets.iter()
            .map(|s| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(", "))),
    )
}

fn expected_sets(sets: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    normalize(sets.iter().map(|s| s.iter().map(|x| x.to_string()).collect()))
}

fn computed_sets(attrs: &[Attractor]) -> BTreeSet<BTreeSet<String>> {
    normalize(attrs.iter().map(|a| a.labels()))
}

fn outcome(check: String, expected: String, computed: String) -> CheckOutcome {
    CheckOutcome {
        passed: expected == computed,
        check,
        expected,
        computed,
    }
}

fn run_check(ctx: &Context, check: &Check) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    match check {
        Check::ReducesTo(text) => out.push(outcome(
            "reduction".into(),
            text.to_string(),
            serialize_network(ctx.reduced()?),
        )),
        Check::ReducesToEquivalent(text) => {
            let stated = parse_network(text)?;
            let reduced = ctx.reduced()?;
            let same = stated.same_function(reduced)?;
            out.push(CheckOutcome {
                check: "reduction is equivalent to stated rules".into(),
                passed: same,
                expected: text.to_string(),
                computed: serialize_network(reduced),
            });
        }
        Check::TrapSpaces(side, expected) => out.push(outcome(
            format!("trap spaces of {}", side_name(*side)),
            join(*expected),
            join(trap_spaces(ctx.net(*side)?)?),
        )),
        Check::MinimalTrapSpaces(side, expected) => out.push(outcome(
            format!("minimal trap spaces of {}", side_name(*side)),
            join(*expected),
            join(minimal_trap_spaces(ctx.net(*side)?)?),
        )),
        Check::PropagationClosure(side, expected) => out.push(outcome(
            format!("propagation closure of {}", side_name(*side)),
            expected.to_string(),
            propagation_closure(ctx.net(*side)?)?.to_string(),
        )),
        Check::FixedPoints(side, expected) => out.push(outcome(
            format!("fixed points of {}", side_name(*side)),
            join(*expected),
            join(fixed_points(ctx.net(*side)?)?),
        )),
        Check::Attractors(side, modes, expected) => {
            for &mode in *modes {
                out.push(outcome(
                    format!("{} attractors of {}", mode.label(), side_name(*side)),
                    show_sets(&expected_sets(expected)),
                    show_sets(&computed_sets(&attractors(ctx.net(*side)?, mode)?)),
                ));
            }
        }
        Check::Strategies(side, criteria, expected) => {
            let net = ctx.net(*side)?;
            let p = ctx.phenotype(*side)?;
            for &c in *criteria {
                let found = find_control_strategies(net, &p, c, &SearchOptions::default())?;
                out.push(outcome(
                    format!("{} strategies for {} with phenotype {}", c, side_name(*side), p),
                    join(*expected),
                    join(found),
                ));
            }
        }
        Check::Verdicts(side, strategy, expected) => {
            let net = ctx.net(*side)?;
            let p = ctx.phenotype(*side)?;
            let s = Subspace::parse(strategy)?;
            for &(c, holds) in *expected {
                let v = check_strategy(net, &s, &p, c, &Limits::default())?;
                out.push(outcome(
                    format!("{} verdict for {} on {} with phenotype {}", c, s, side_name(*side), p),
                    holds.to_string(),
                    v.holds.to_string(),
                ));
            }
        }
        Check::Mediator(expected) => out.push(outcome(
            "eliminated component is a mediator".into(),
            expected.to_string(),
            is_mediator(&ctx.original, ctx.eliminated()?)?.to_string(),
        )),
        Check::Linear(expected) => out.push(outcome(
            "eliminated component is linear".into(),
            expected.to_string(),
            is_linear(&ctx.original, ctx.eliminated()?)?.to_string(),
        )),
        Check::MtsPreserved(expected) => out.push(outcome(
            "minimal trap spaces strictly preserved".into(),
            expected.to_string(),
            strictly_preserves_mts(&ctx.original, ctx.eliminated()?)?
                .preserved
                .to_string(),
        )),
        Check::TrapSet(side, mode, states, expected) => {
            let set = states
                .iter()
                .map(|s| State::parse(s))
                .collect::<std::result::Result<BTreeSet<_>, _>>()?;
            out.push(outcome(
                format!(
                    "{} is a {} trap set of {}",
                    join(*states),
                    mode.label(),
                    side_name(*side)
                ),
                expected.to_string(),
                is_trap_set(ctx.net(*side)?, &set, *mode)?.to_string(),
            ));
        }
        Check::CylinderAttractors(mode, attractor, expected) => {
            let e = ctx.eliminated()?;
            let shadow = attractor
                .iter()
                .map(|s| State::parse(s).map(|x| x.remove(e)))
                .collect::<std::result::Result<BTreeSet<_>, _>>()?;
            let count = attractors(&ctx.original, *mode)?
                .iter()
                .filter(|a| a.states().iter().all(|x| shadow.contains(&x.remove(e))))
                .count();
            out.push(outcome(
                format!("{} attractors in the cylinder over {}", mode.label(), join(*attractor)),
                expected.to_string(),
                count.to_string(),
            ));
        }
        Check::InducedAttractors(mode, rows) => {
            for (strategy, expected) in *rows {
                let s = Subspace::parse(strategy)?;
                let free = s.free_indices();
                let controlled = apply_control(&ctx.original, &s)?;
                let projected = attractors(&controlled, *mode)?
                    .iter()
                    .map(|a| {
                        a.states()
                            .iter()
                            .map(|x| x.project(&free).map(|y| y.to_string()))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(outcome(
                    format!("{} attractors induced by {}", mode.label(), s),
                    show_sets(&expected_sets(expected)),
                    show_sets(&normalize(projected)),
                ));
            }
        }
        Check::Percolates(side, seed, expected) => {
            let s = Subspace::parse(seed)?;
            out.push(outcome(
                format!("percolation of {} on {}", s, side_name(*side)),
                expected.to_string(),
                percolate(ctx.net(*side)?, &s)?.to_string(),
            ));
        }
        Check::Controlled(strategy, expected) => {
            let s = Subspace::parse(strategy)?;
            out.push(outcome(
                format!("network controlled by {s}"),
                expected.to_string(),
                serialize_network(&apply_control(&ctx.original, &s)?),
            ));
        }
        Check::Refutes(cell) => {
            let property: PropertyId = cell.parse()?;
            let p = ctx.phenotype.unwrap_or_else(|| Subspace::full(ctx.original.arity()));
            let instance = Instance::new(ctx.original.clone(), ctx.eliminated()?, p)?;
            let evidence = check_instance(property, &instance)?;
            out.push(CheckOutcome {
                check: format!("refutes {property}"),
                passed: evidence.is_some(),
                expected: "counterexample".into(),
                computed: match evidence {
                    Some(lines) => lines.join("; "),
                    None => "implication holds".into(),
                },
            });
        }
    }
    Ok(out)
}

impl PaperCase {
    pub fn run(&self) -> Result<CaseReport> {
        let original = parse_network(self.network)?;
        let reduced = match self.eliminated {
            Some(e) => Some((e, eliminate(&original, e)?)),
            None => None,
        };
        let phenotype = self.phenotype.map(Subspace::parse).transpose()?;
        let ctx = Context {
            original,
            reduced,
            phenotype,
        };
        let mut checks = Vec::new();
        for check in &self.checks {
            checks.extend(run_check(&ctx, check)?);
        }
        Ok(CaseReport {
            id: self.id,
            location: self.location,
            passed: checks.iter().all(|c| c.passed),
            checks,
        })
    }
}
