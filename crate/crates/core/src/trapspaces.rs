//! Trap spaces, minimal trap spaces and value propagation.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{BnError, Result};
use crate::limits::Limits;
use crate::network::BooleanNetwork;
use crate::state::Subspace;

/// Residual supports larger than this are not enumerated.
const MAX_RESIDUAL_SUPPORT: u32 = 24;

/// Value of `f_i` on all of `space`: `Some(b)` when constant.
pub fn constant_on(net: &BooleanNetwork, i: usize, space: &Subspace) -> Result<Option<bool>> {
    net.check_index(i)?;
    let residual = net.rule(i).partial_eval(space.fixed_mask(), space.values());
    let support = residual.support();
    if let crate::expr::BoolExpr::Const(b) = residual {
        return Ok(Some(b));
    }
    let k = support.count_ones();
    if k > MAX_RESIDUAL_SUPPORT {
        return Err(BnError::Capacity {
            what: "constancy check",
            arity: k as usize,
            cap: MAX_RESIDUAL_SUPPORT as usize,
        });
    }
    // Walk the subsets of the residual support; only those bits matter.
    let first = residual.eval(0);
    let mut sub = support;
    while sub != 0 {
        if residual.eval(sub) != first {
            return Ok(None);
        }
        sub = (sub - 1) & support;
    }
    Ok(Some(first))
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

/// Whether every fixed coordinate of `space` is kept by `f` on all of `space`.
pub fn is_trap_space(net: &BooleanNetwork, space: &Subspace) -> Result<bool> {
    check_arity(net, space)?;
    for i in space.fixed_indices() {
        let want = space.get(i).value();
        if constant_on(net, i, space)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest subspace containing `f(space)`.
pub fn percolate(net: &BooleanNetwork, space: &Subspace) -> Result<Subspace> {
    check_arity(net, space)?;
    let mut fixed = 0u64;
    let mut values = 0u64;
    for i in 0..net.arity() {
        if let Some(b) = constant_on(net, i, space)? {
            fixed |= 1 << i;
            values |= (b as u64) << i;
        }
    }
    Ok(Subspace::new(fixed, values, net.arity()))
}

/// Iterates of propagation from a seed up to the first repetition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PercolationTrace {
    /// Distinct iterates, seed first.
    pub iterates: Vec<Subspace>,
    /// Index of the iterate that the last one maps back to.
    pub cycle_start: usize,
}

impl PercolationTrace {
    pub fn seed(&self) -> Subspace {
        self.iterates[0]
    }

    pub fn last(&self) -> Subspace {
        *self.iterates.last().expect("trace has a seed")
    }

    /// The stable subspace, if iteration reached one.
    pub fn fixpoint(&self) -> Option<Subspace> {
        (self.cycle_start + 1 == self.iterates.len()).then(|| self.last())
    }

    /// Iterates forming the terminal cycle.
    pub fn cycle(&self) -> &[Subspace] {
        &self.iterates[self.cycle_start..]
    }

    /// Steps taken until the first repeated value.
    pub fn steps(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_decreasing(&self) -> bool {
        self.iterates.windows(2).all(|w| w[1].is_subset_of(&w[0]))
    }
}

pub fn percolation_trace(net: &BooleanNetwork, seed: &Subspace) -> Result<PercolationTrace> {
    check_arity(net, seed)?;
    let mut seen: HashMap<Subspace, usize> = HashMap::new();
    let mut iterates = vec![*seed];
    seen.insert(*seed, 0);
    loop {
        let next = percolate(net, iterates.last().unwrap())?;
        if let Some(&k) = seen.get(&next) {
            return Ok(PercolationTrace {
                iterates,
                cycle_start: k,
            });
        }
        seen.insert(next, iterates.len());
        iterates.push(next);
    }
}

/// Propagation iterated from `seed` until stable.
///
/// Seeds that are not trap spaces may lead into a cycle instead; that is
/// reported as [`BnError::NonMonotone`].
pub fn percolation_fixpoint(net: &BooleanNetwork, seed: &Subspace) -> Result<Subspace> {
    let trace = percolation_trace(net, seed)?;
    trace.fixpoint().ok_or_else(|| BnError::NonMonotone {
        seed: *seed,
        cycle: trace.cycle().to_vec(),
    })
}

/// Propagation fixpoint from the full space.
pub fn propagation_closure(net: &BooleanNetwork) -> Result<Subspace> {
    percolation_fixpoint(net, &Subspace::full(net.arity()))
}

/// Ternary indexing of subspaces: digit `j` of the index is 0, 1, or 2 (free)
/// for component `j`.
struct TernaryLattice {
    arity: usize,
    powers: Vec<usize>,
    // For each index: the packed point if nothing is free, otherwise the
    // lowest free position with the high bit set.
    aux: Vec<u32>,
}

const HAS_FREE: u32 = 1 << 31;

impl TernaryLattice {
    fn new(arity: usize) -> TernaryLattice {
        let powers: Vec<usize> = (0..=arity).map(|j| 3usize.pow(j as u32)).collect();
        let size = powers[arity];
        let mut aux = Vec::with_capacity(size);
        let mut digits = vec![0u8; arity];
        for _ in 0..size {
            let entry = match digits.iter().position(|&d| d == 2) {
                Some(j) => HAS_FREE | j as u32,
                None => digits
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &d)| acc | (d as u32) << j),
            };
            aux.push(entry);
            for d in digits.iter_mut() {
                if *d < 2 {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        TernaryLattice { arity, powers, aux }
    }

    fn size(&self) -> usize {
        self.aux.len()
    }

    fn subspace(&self, mut index: usize) -> Subspace {
        let mut fixed = 0u64;
        let mut values = 0u64;
        for j in 0..self.arity {
            match index % 3 {
                0 => fixed |= 1 << j,
                1 => {
                    fixed |= 1 << j;
                    values |= 1 << j;
                }
                _ => {}
            }
            index /= 3;
        }
        Subspace::new(fixed, values, self.arity)
    }

    /// Trap-space flag for every subspace.
    fn trap_flags(&self, net: &BooleanNetwork) -> Result<Vec<bool>> {
        let tables = net.truth_tables()?;
        let size = self.size();
        let mut trap = vec![true; size];
        // 0/1 = constant value of f_i on the subspace, 2 = not constant
        let mut value = vec![0u8; size];
        for (i, table) in tables.iter().enumerate() {
            let pi = self.powers[i];
            for s in 0..size {
                let a = self.aux[s];
                let v = if a & HAS_FREE == 0 {
                    table.get(a as u64) as u8
                } else {
                    let j = (a & !HAS_FREE) as usize;
                    let lo = value[s - 2 * self.powers[j]];
                    let hi = value[s - self.powers[j]];
                    if lo == hi {
                        lo
                    } else {
                        2
                    }
                };
                value[s] = v;
                let digit = (s / pi) % 3;
                if digit != 2 && v as usize != digit {
                    trap[s] = false;
                }
            }
        }
        Ok(trap)
    }

    /// Inclusion-minimal entries of `trap`.
    fn minimal_flags(&self, trap: &[bool]) -> Vec<bool> {
        let size = self.size();
        // contains[s]: some trap space lies inside s
        let mut contains = vec![false; size];
        let mut minimal = vec![false; size];
        for s in 0..size {
            let mut child_contains = false;
            let mut rest = s;
            for j in 0..self.arity {
                if rest % 3 == 2 {
                    let p = self.powers[j];
                    if contains[s - 2 * p] || contains[s - p] {
                        child_contains = true;
                        break;
                    }
                }
                rest /= 3;
            }
            contains[s] = trap[s] || child_contains;
            minimal[s] = trap[s] && !child_contains;
        }
        minimal
    }

    fn collect(&self, flags: &[bool]) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(s, _)| self.subspace(s))
            .collect();
        out.sort();
        out
    }
}

/// All trap spaces in canonical order.
pub fn trap_spaces(net: &BooleanNetwork) -> Result<Vec<Subspace>> {
    trap_spaces_with_limits(net, &Limits::default())
}

pub fn trap_spaces_with_limits(net: &BooleanNetwork, limits: &Limits) -> Result<Vec<Subspace>> {
    limits.check_subspaces("trap-space enumeration", net.arity())?;
    let lattice = TernaryLattice::new(net.arity());
    let trap = lattice.trap_flags(net)?;
    Ok(lattice.collect(&trap))
}

/// Inclusion-minimal trap spaces in canonical order.
pub fn minimal_trap_spaces(net: &BooleanNetwork) -> Result<Vec<Subspace>> {
    minimal_trap_spaces_with_limits(net, &Limits::default())
}

pub fn minimal_trap_spaces_with_limits(net: &BooleanNetwork, limits: &Limits) -> Result<Vec<Subspace>> {
    limits.check_subspaces("trap-space enumeration", net.arity())?;
    let lattice = TernaryLattice::new(net.arity());
    let trap = lattice.trap_flags(net)?;
    Ok(lattice.collect(&lattice.minimal_flags(&trap)))
}
