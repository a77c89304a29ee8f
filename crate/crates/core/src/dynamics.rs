//! Synchronous, asynchronous and general asynchronous dynamics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BnError, Result};
use crate::limits::Limits;
use crate::network::BooleanNetwork;
use crate::state::State;

/// GD successor lists are refused above this many simultaneously enabled updates.
const MAX_ENABLED_FOR_LISTING: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpdateMode {
    #[serde(rename = "sync")]
    Synchronous,
    #[serde(rename = "async")]
    Asynchronous,
    General,
}

impl UpdateMode {
    pub const ALL: [UpdateMode; 3] = [UpdateMode::Synchronous, UpdateMode::Asynchronous, UpdateMode::General];

    pub fn as_str(self) -> &'static str {
        match self {
            UpdateMode::Synchronous => "sync",
            UpdateMode::Asynchronous => "async",
            UpdateMode::General => "general",
        }
    }

    /// Short label used in tables (`SD`, `AD`, `GD`).
    pub fn label(self) -> &'static str {
        match self {
            UpdateMode::Synchronous => "SD",
            UpdateMode::Asynchronous => "AD",
            UpdateMode::General => "GD",
        }
    }
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UpdateMode {
    type Err = BnError;

    fn from_str(s: &str) -> Result<UpdateMode> {
        match s.to_ascii_lowercase().as_str() {
            "sync" | "synchronous" | "sd" => Ok(UpdateMode::Synchronous),
            "async" | "asynchronous" | "ad" => Ok(UpdateMode::Asynchronous),
            "general" | "gd" => Ok(UpdateMode::General),
            _ => Err(BnError::InvalidArgument(format!("unknown update mode `{s}`"))),
        }
    }
}

/// Cursor over the successors of one state, given `diff = x ^ f(x)`.
#[derive(Clone, Copy)]
struct SuccessorCursor {
    diff: u64,
    next: u64,
}

impl SuccessorCursor {
    fn new(diff: u64) -> SuccessorCursor {
        SuccessorCursor { diff, next: diff }
    }

    /// Next flip mask, or `None` when exhausted.
    #[inline]
    fn advance(&mut self, mode: UpdateMode) -> Option<u64> {
        if self.next == 0 {
            return None;
        }
        let flip = match mode {
            UpdateMode::Synchronous => {
                let j = self.next;
                self.next = 0;
                j
            }
            UpdateMode::Asynchronous => {
                let bit = self.next & self.next.wrapping_neg();
                self.next ^= bit;
                bit
            }
            UpdateMode::General => {
                let j = self.next;
                self.next = (j - 1) & self.diff;
                j
            }
        };
        Some(flip)
    }
}

/// Successor bit patterns of `bits` given its image, unsorted.
fn successor_bits(bits: u64, image: u64, mode: UpdateMode, out: &mut Vec<u64>) {
    let mut cursor = SuccessorCursor::new(bits ^ image);
    while let Some(flip) = cursor.advance(mode) {
        out.push(bits ^ flip);
    }
}

/// All states reachable in one transition from `x`, ascending.
pub fn successors(net: &BooleanNetwork, x: &State, mode: UpdateMode) -> Result<Vec<State>> {
    net.check_state(x)?;
    let image = net.image_bits(x.bits());
    let enabled = (image ^ x.bits()).count_ones();
    if mode == UpdateMode::General && enabled > MAX_ENABLED_FOR_LISTING {
        return Err(BnError::Capacity {
            what: "successor listing",
            arity: enabled as usize,
            cap: MAX_ENABLED_FOR_LISTING as usize,
        });
    }
    let mut out = Vec::new();
    successor_bits(x.bits(), image, mode, &mut out);
    out.sort_unstable();
    Ok(out.into_iter().map(|b| State::new(b, x.arity())).collect())
}

/// Transition relation over all 2^n states.
///
/// Only the image table is stored; successor lists are generated from it on
/// demand, since GD out-degrees grow exponentially with the number of
/// enabled updates.
#[derive(Clone, Debug)]
pub struct TransitionSystem {
    mode: UpdateMode,
    arity: usize,
    image: Vec<u32>,
}

impl TransitionSystem {
    pub fn mode(&self) -> UpdateMode {
        self.mode
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn state_count(&self) -> usize {
        self.image.len()
    }

    /// `f(x)` for packed `x`.
    pub fn image(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    pub fn is_fixed(&self, x: u32) -> bool {
        self.image[x as usize] == x
    }

    /// Successors of packed `x`, ascending.
    pub fn successors(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::new();
        successor_bits(x as u64, self.image[x as usize] as u64, self.mode, &mut out);
        let mut out: Vec<u32> = out.into_iter().map(|b| b as u32).collect();
        out.sort_unstable();
        out
    }

    pub fn out_degree(&self, x: u32) -> u64 {
        let enabled = (x ^ self.image[x as usize]).count_ones();
        match (self.mode, enabled) {
            (_, 0) => 0,
            (UpdateMode::Synchronous, _) => 1,
            (UpdateMode::Asynchronous, k) => k as u64,
            (UpdateMode::General, k) => (1u64 << k) - 1,
        }
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.image.len() as u32)
            .into_par_iter()
            .map(|x| self.out_degree(x))
            .sum()
    }

    pub fn has_edge(&self, x: u32, y: u32) -> bool {
        let diff = x ^ self.image[x as usize];
        let moved = x ^ y;
        if moved == 0 {
            return false;
        }
        match self.mode {
            UpdateMode::Synchronous => moved == diff,
            UpdateMode::Asynchronous => moved.count_ones() == 1 && moved & diff != 0,
            UpdateMode::General => moved & !diff == 0,
        }
    }

    /// Terminal strongly connected components, each sorted, in ascending
    /// order of least member.
    pub fn terminal_components(&self) -> Vec<Vec<u32>> {
        let mut comps = TerminalSccSearch::new(self).run();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    /// Whether no transition leaves `set` (a sorted slice of packed states).
    pub fn is_trap_set(&self, set: &[u32]) -> bool {
        let mut buf = Vec::new();
        set.iter().all(|&x| {
            buf.clear();
            successor_bits(x as u64, self.image[x as usize] as u64, self.mode, &mut buf);
            buf.iter().all(|&y| set.binary_search(&(y as u32)).is_ok())
        })
    }
}

pub fn build_transition_system(net: &BooleanNetwork, mode: UpdateMode) -> Result<TransitionSystem> {
    build_transition_system_with_limits(net, mode, &Limits::default())
}

pub fn build_transition_system_with_limits(
    net: &BooleanNetwork,
    mode: UpdateMode,
    limits: &Limits,
) -> Result<TransitionSystem> {
    let n = net.arity();
    limits.check_states("state-space enumeration", n)?;
    net.truth_tables()?;
    let image: Vec<u32> = (0..1u64 << n)
        .into_par_iter()
        .map(|x| net.image_bits(x) as u32)
        .collect();
    Ok(TransitionSystem { mode, arity: n, image })
}

const UNVISITED: u8 = 0;
const ON_STACK: u8 = 1;
const DONE: u8 = 2;

struct Frame {
    node: u32,
    cursor: SuccessorCursor,
}

/// Iterative Tarjan restricted to terminal components.
///
/// A node "leaks" once it has an edge to an already finished node or to a
/// child that closed its own component. A leaking node cannot be part of a
/// terminal component, so its remaining edges are skipped: every component
/// that is really terminal is still explored in full, and any truncated group
/// contains a leaking node and is discarded.
struct TerminalSccSearch<'a> {
    ts: &'a TransitionSystem,
    index: Vec<u32>,
    low: Vec<u32>,
    status: Vec<u8>,
    leak: Vec<bool>,
    stack: Vec<u32>,
    calls: Vec<Frame>,
    counter: u32,
    found: Vec<Vec<u32>>,
}

impl<'a> TerminalSccSearch<'a> {
    fn new(ts: &'a TransitionSystem) -> Self {
        let size = ts.image.len();
        TerminalSccSearch {
            ts,
            index: vec![0; size],
            low: vec![0; size],
            status: vec![UNVISITED; size],
            leak: vec![false; size],
            stack: Vec::new(),
            calls: Vec::new(),
            counter: 0,
            found: Vec::new(),
        }
    }

    fn open(&mut self, v: u32) {
        let vi = v as usize;
        self.counter += 1;
        self.index[vi] = self.counter;
        self.low[vi] = self.counter;
        self.status[vi] = ON_STACK;
        self.stack.push(v);
        let diff = (v ^ self.ts.image[vi]) as u64;
        self.calls.push(Frame {
            node: v,
            cursor: SuccessorCursor::new(diff),
        });
    }

    fn run(mut self) -> Vec<Vec<u32>> {
        let mode = self.ts.mode;
        for root in 0..self.ts.image.len() as u32 {
            if self.status[root as usize] != UNVISITED {
                continue;
            }
            self.open(root);
            while let Some(frame) = self.calls.last_mut() {
                let v = frame.node;
                let vi = v as usize;
                let next = if self.leak[vi] {
                    None
                } else {
                    frame.cursor.advance(mode)
                };
                match next {
                    Some(flip) => {
                        let w = v ^ flip as u32;
                        let wi = w as usize;
                        match self.status[wi] {
                            UNVISITED => self.open(w),
                            ON_STACK => self.low[vi] = self.low[vi].min(self.index[wi]),
                            _ => self.leak[vi] = true,
                        }
                    }
                    None => {
                        self.calls.pop();
                        let closed = self.low[vi] == self.index[vi];
                        if closed {
                            self.close(v);
                        }
                        if let Some(parent) = self.calls.last() {
                            let pi = parent.node as usize;
                            if closed {
                                self.leak[pi] = true;
                            } else {
                                self.low[pi] = self.low[pi].min(self.low[vi]);
                                self.leak[pi] |= self.leak[vi];
                            }
                        }
                    }
                }
            }
        }
        self.found
    }

    fn close(&mut self, root: u32) {
        let mut members = Vec::new();
        let mut terminal = true;
        loop {
            let w = self.stack.pop().expect("root is on the stack");
            self.status[w as usize] = DONE;
            terminal &= !self.leak[w as usize];
            members.push(w);
            if w == root {
                break;
            }
        }
        if terminal {
            self.found.push(members);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttractorKind {
    FixedPoint,
    Cyclic,
}

/// A terminal strongly connected component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Attractor {
    states: Vec<State>,
}

impl Attractor {
    /// Builds from a nonempty set of states; stored ascending.
    pub fn new(states: impl IntoIterator<Item = State>) -> Attractor {
        let states: Vec<State> = states.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        assert!(!states.is_empty(), "attractor without states");
        Attractor { states }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn least(&self) -> State {
        self.states[0]
    }

    pub fn kind(&self) -> AttractorKind {
        if self.states.len() == 1 {
            AttractorKind::FixedPoint
        } else {
            AttractorKind::Cyclic
        }
    }

    pub fn contains(&self, x: &State) -> bool {
        self.states.binary_search(x).is_ok()
    }

    pub fn state_set(&self) -> BTreeSet<State> {
        self.states.iter().copied().collect()
    }

    /// States rendered as bitstrings, ascending.
    pub fn labels(&self) -> Vec<String> {
        self.states.iter().map(State::to_string).collect()
    }
}

impl fmt::Display for Attractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.states.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl TransitionSystem {
    pub fn attractors(&self) -> Vec<Attractor> {
        self.terminal_components()
            .into_iter()
            .map(|c| Attractor {
                states: c.into_iter().map(|x| State::new(x as u64, self.arity)).collect(),
            })
            .collect()
    }
}

/// Attractors in ascending order of least member.
pub fn attractors(net: &BooleanNetwork, mode: UpdateMode) -> Result<Vec<Attractor>> {
    attractors_with_limits(net, mode, &Limits::default())
}

pub fn attractors_with_limits(net: &BooleanNetwork, mode: UpdateMode, limits: &Limits) -> Result<Vec<Attractor>> {
    Ok(build_transition_system_with_limits(net, mode, limits)?.attractors())
}

/// All `x` with `f(x) = x`, ascending.
pub fn fixed_points(net: &BooleanNetwork) -> Result<Vec<State>> {
    fixed_points_with_limits(net, &Limits::default())
}

pub fn fixed_points_with_limits(net: &BooleanNetwork, limits: &Limits) -> Result<Vec<State>> {
    let n = net.arity();
    limits.check_states("fixed-point scan", n)?;
    net.truth_tables()?;
    let points: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&x| net.image_bits(x) == x)
        .collect();
    Ok(points.into_iter().map(|x| State::new(x, n)).collect())
}

/// Whether every transition from a state of `set` stays in `set`.
pub fn is_trap_set(net: &BooleanNetwork, set: &BTreeSet<State>, mode: UpdateMode) -> Result<bool> {
    let mut buf = Vec::new();
    for x in set {
        net.check_state(x)?;
        buf.clear();
        successor_bits(x.bits(), net.image_bits(x.bits()), mode, &mut buf);
        if !buf.iter().all(|&y| set.contains(&State::new(y, x.arity()))) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_network;

    fn net(text: &str) -> BooleanNetwork {
        parse_network(text).unwrap()
    }

    fn fig1a() -> BooleanNetwork {
        net("x1, x1 & !x2 | x1 & x3\nx2, x1 & !x3\nx3, x2")
    }

    fn fig1b() -> BooleanNetwork {
        net("x1, x1\nx2, x1 & !x2")
    }

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn labels(xs: &[State]) -> Vec<String> {
        xs.iter().map(State::to_string).collect()
    }

    fn attractor_labels(net: &BooleanNetwork, mode: UpdateMode) -> Vec<Vec<String>> {
        attractors(net, mode).unwrap().iter().map(Attractor::labels).collect()
    }

    #[test]
    fn successors_of_110() {
        let f = fig1a();
        let x = st("110");
        let sorted = |v: &[&str]| {
            let mut v: Vec<State> = v.iter().map(|s| st(s)).collect();
            v.sort();
            labels(&v)
        };
        assert_eq!(labels(&successors(&f, &x, UpdateMode::Synchronous).unwrap()), ["011"]);
        assert_eq!(
            labels(&successors(&f, &x, UpdateMode::Asynchronous).unwrap()),
            sorted(&["010", "111"])
        );
        assert_eq!(
            labels(&successors(&f, &x, UpdateMode::General).unwrap()),
            sorted(&["010", "111", "011"])
        );
        for mode in UpdateMode::ALL {
            assert!(successors(&f, &st("000"), mode).unwrap().is_empty());
        }
    }

    #[test]
    fn fig1a_async_edges() {
        // Edge list from the brute-force oracle.
        let ts = build_transition_system(&fig1a(), UpdateMode::Asynchronous).unwrap();
        let mut edges = Vec::new();
        for x in 0..8u32 {
            for y in ts.successors(x) {
                edges.push((State::new(x as u64, 3).to_string(), State::new(y as u64, 3).to_string()));
            }
        }
        edges.sort();
        let expected: Vec<(String, String)> = [
            ("001", "000"),
            ("010", "000"),
            ("010", "011"),
            ("011", "001"),
            ("100", "110"),
            ("101", "100"),
            ("110", "010"),
            ("110", "111"),
            ("111", "101"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(edges, expected);
    }

    #[test]
    fn identity_has_no_edges() {
        let f = net("a, a");
        for mode in UpdateMode::ALL {
            assert_eq!(build_transition_system(&f, mode).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn swap_sync_edges() {
        let f = net("x1, x2\nx2, x1");
        let ts = build_transition_system(&f, UpdateMode::Synchronous).unwrap();
        assert_eq!(ts.edge_count(), 2);
        assert!(ts.has_edge(st("01").bits() as u32, st("10").bits() as u32));
        assert!(ts.has_edge(st("10").bits() as u32, st("01").bits() as u32));
        assert_eq!(
            attractor_labels(&f, UpdateMode::Synchronous),
            vec![vec!["00"], vec!["10", "01"], vec!["11"]]
        );
    }

    #[test]
    fn attractor_examples() {
        for mode in UpdateMode::ALL {
            assert_eq!(attractor_labels(&fig1a(), mode), vec![vec!["000"]]);
            assert_eq!(attractor_labels(&fig1b(), mode), vec![vec!["00"], vec!["10", "11"]]);
        }
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(labels(&fixed_points(&fig1a()).unwrap()), ["000"]);
        let med = net("x1, x3 | x1 & x2 | !x1 & !x2\nx2, x4 | x2 & !x1\nx3, x3 & !x1 | !x1 & !x2\nx4, x3");
        assert_eq!(labels(&fixed_points(&med).unwrap()), ["0100"]);
        assert_eq!(fixed_points(&net("a, a\nb, b\nc, c")).unwrap().len(), 8);
    }

    #[test]
    fn trap_set_examples() {
        let f = net("x1, x1 & !x3\nx2, 0\nx3, 0");
        let a: BTreeSet<State> = [st("000"), st("111")].into();
        assert!(is_trap_set(&f, &a, UpdateMode::Synchronous).unwrap());
        let g = net("x1, x1\nx2, 0");
        let b: BTreeSet<State> = [st("00"), st("11")].into();
        assert!(!is_trap_set(&g, &b, UpdateMode::Synchronous).unwrap());
        let all: BTreeSet<State> = (0..8).map(|x| State::new(x, 3)).collect();
        for mode in UpdateMode::ALL {
            assert!(is_trap_set(&fig1a(), &all, mode).unwrap());
        }
    }

    #[test]
    fn capacity_is_reported() {
        let f = net("a, a");
        let limits = Limits {
            max_state_arity: 0,
            ..Limits::default()
        };
        let err = attractors_with_limits(&f, UpdateMode::General, &limits).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn mode_names() {
        for mode in UpdateMode::ALL {
            assert_eq!(mode.as_str().parse::<UpdateMode>().unwrap(), mode);
        }
        assert!("fast".parse::<UpdateMode>().is_err());
    }
}
