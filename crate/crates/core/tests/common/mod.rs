//! Truth-table networks and brute-force reference implementations.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use bnkit::{parse_network, BooleanNetwork};
use rand::Rng;

/// A network given by one truth table per component; bit `x` of `tables[i]`
/// is `f_i(x)` with component `j` read from bit `j` of `x`.
#[derive(Clone, Debug)]
pub struct Tables {
    pub arity: usize,
    pub tables: Vec<u64>,
}

impl Tables {
    pub fn eval(&self, i: usize, x: u64) -> bool {
        self.tables[i] >> x & 1 == 1
    }

    pub fn image(&self, x: u64) -> u64 {
        (0..self.arity).fold(0, |acc, i| acc | (self.eval(i, x) as u64) << i)
    }

    pub fn states(&self) -> std::ops::Range<u64> {
        0..1 << self.arity
    }

    /// Minterm DNF text understood by the parser.
    pub fn to_bnet(&self) -> String {
        let mut lines = Vec::new();
        for i in 0..self.arity {
            let terms: Vec<String> = self
                .states()
                .filter(|&x| self.eval(i, x))
                .map(|x| {
                    (0..self.arity)
                        .map(|j| {
                            if x >> j & 1 == 1 {
                                format!("v{j}")
                            } else {
                                format!("!v{j}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" & ")
                })
                .collect();
            let rule = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" | ")
            };
            lines.push(format!("v{i}, {rule}"));
        }
        lines.join("\n")
    }

    pub fn network(&self) -> BooleanNetwork {
        parse_network(&self.to_bnet()).expect("generated text parses")
    }

    pub fn successors(&self, x: u64, mode: &str) -> Vec<u64> {
        let diff = self.image(x) ^ x;
        let mut out = BTreeSet::new();
        match mode {
            "sync" => {
                out.insert(x ^ diff);
            }
            "async" => {
                for i in 0..self.arity {
                    if diff >> i & 1 == 1 {
                        out.insert(x ^ 1 << i);
                    }
                }
            }
            _ => {
                for sub in 1..1u64 << self.arity {
                    if sub & !diff == 0 {
                        out.insert(x ^ sub);
                    }
                }
            }
        }
        if diff == 0 {
            out.clear();
        }
        out.into_iter().collect()
    }

    fn reach(&self, x: u64, mode: &str) -> BTreeSet<u64> {
        let mut seen = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for z in self.successors(y, mode) {
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// Attractors as sorted state sets: `x` is attractive when every state it
    /// reaches reaches it back.
    pub fn attractors(&self, mode: &str) -> BTreeSet<Vec<u64>> {
        let reach: Vec<BTreeSet<u64>> = self.states().map(|x| self.reach(x, mode)).collect();
        self.states()
            .filter(|&x| reach[x as usize].iter().all(|&y| reach[y as usize].contains(&x)))
            .map(|x| reach[x as usize].iter().copied().collect())
            .collect()
    }

    /// Subspaces as text, `*` for free.
    pub fn subspaces(&self) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..self.arity {
            out = out
                .into_iter()
                .flat_map(|s| ["0", "1", "*"].map(|c| format!("{s}{c}")))
                .collect();
        }
        out
    }

    pub fn members(space: &str) -> Vec<u64> {
        let mut out = vec![0u64];
        for (j, c) in space.chars().enumerate() {
            out = match c {
                '0' => out,
                '1' => out.into_iter().map(|x| x | 1 << j).collect(),
                _ => out.into_iter().flat_map(|x| [x, x | 1 << j]).collect(),
            };
        }
        out
    }

    pub fn is_trap_space(&self, space: &str) -> bool {
        Self::members(space).into_iter().all(|x| {
            space.chars().enumerate().all(|(i, c)| match c {
                '0' => !self.eval(i, x),
                '1' => self.eval(i, x),
                _ => true,
            })
        })
    }

    pub fn trap_spaces(&self) -> BTreeSet<String> {
        self.subspaces().into_iter().filter(|s| self.is_trap_space(s)).collect()
    }

    pub fn minimal_trap_spaces(&self) -> BTreeSet<String> {
        let traps = self.trap_spaces();
        let inside = |a: &str, b: &str| a.chars().zip(b.chars()).all(|(p, q)| q == '*' || p == q);
        traps
            .iter()
            .filter(|t| !traps.iter().any(|u| u != *t && inside(u, t)))
            .cloned()
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<u64> {
        self.states().filter(|&x| self.image(x) == x).collect()
    }
}

pub fn state_text(x: u64, arity: usize) -> String {
    (0..arity).map(|j| if x >> j & 1 == 1 { '1' } else { '0' }).collect()
}

/// Random truth tables for at most six components; each component reads a random set of at most three regulators.
pub fn random_tables<R: Rng>(rng: &mut R, arity: usize) -> Tables {
    let tables = (0..arity)
        .map(|_| {
            let k = rng.gen_range(0..=arity.min(3));
            let mut regs: Vec<usize> = (0..arity).collect();
            for j in 0..k {
                let r = rng.gen_range(j..arity);
                regs.swap(j, r);
            }
            regs.truncate(k);
            let local: u64 = rng.gen::<u64>() & ((1u64 << (1 << k)) - 1);
            (0..1u64 << arity).fold(0u64, |acc, x| {
                let idx = regs.iter().enumerate().fold(0, |a, (p, &r)| a | (x >> r & 1) << p);
                acc | (local >> idx & 1) << x
            })
        })
        .collect();
    Tables { arity, tables }
}
