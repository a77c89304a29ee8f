//! States of the Boolean cube and subspaces (trit vectors over `{0, 1, *}`).
//!
//! Both types are bit-packed: component `i` lives in bit `i` of a `u64`, so the
//! numeric order of states is little-endian over declaration order. Text
//! renderings list components left to right, component 1 first.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{BnError, ParseError, Result};

/// Largest arity representable by the packed encodings.
pub const MAX_ARITY: usize = 64;

pub(crate) fn full_mask(arity: usize) -> u64 {
    if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    }
}

fn check_arity(arity: usize) {
    assert!(arity <= MAX_ARITY, "arity {arity} exceeds {MAX_ARITY}");
}

fn index_mask(indices: &[usize], arity: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &i in indices {
        if i >= arity {
            return Err(BnError::IndexOutOfRange { index: i, arity });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Removes bit `pos` and shifts the higher bits down by one.
pub(crate) fn remove_bit(bits: u64, pos: usize) -> u64 {
    let low = bits & full_mask(pos);
    let high = if pos >= 63 { 0 } else { (bits >> (pos + 1)) << pos };
    low | high
}

/// Opens a gap at `pos` (filled with `value`), shifting higher bits up.
pub(crate) fn insert_bit(bits: u64, pos: usize, value: bool) -> u64 {
    let low = bits & full_mask(pos);
    let high = if pos >= 63 { 0 } else { (bits >> pos) << (pos + 1) };
    low | high | ((value as u64) << pos)
}

/// Keeps the bits listed in `indices`, packed in the listed order.
fn gather_bits(bits: u64, indices: &[usize]) -> u64 {
    indices
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &i)| acc | (((bits >> i) & 1) << k))
}

/// A point of the Boolean cube `{0,1}^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: u64,
    arity: u8,
}

impl State {
    pub fn new(bits: u64, arity: usize) -> State {
        check_arity(arity);
        State {
            bits: bits & full_mask(arity),
            arity: arity as u8,
        }
    }

    pub fn zeros(arity: usize) -> State {
        State::new(0, arity)
    }

    pub fn from_bools(values: &[bool]) -> State {
        let bits = values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        State::new(bits, values.len())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.arity());
        (self.bits >> i) & 1 == 1
    }

    pub fn with(&self, i: usize, value: bool) -> State {
        let bits = (self.bits & !(1 << i)) | ((value as u64) << i);
        State::new(bits, self.arity())
    }

    /// Inverts every coordinate listed in `indices`.
    pub fn flip(&self, indices: &[usize]) -> Result<State> {
        let mask = index_mask(indices, self.arity())?;
        Ok(self.flip_mask(mask))
    }

    pub fn flip_mask(&self, mask: u64) -> State {
        State::new(self.bits ^ mask, self.arity())
    }

    /// Restriction to the listed coordinates, in the listed order.
    pub fn project(&self, indices: &[usize]) -> Result<State> {
        index_mask(indices, self.arity())?;
        Ok(State::new(gather_bits(self.bits, indices), indices.len()))
    }

    /// Drops coordinate `pos`.
    pub fn remove(&self, pos: usize) -> State {
        debug_assert!(pos < self.arity());
        State::new(remove_bit(self.bits, pos), self.arity() - 1)
    }

    /// Inserts a new coordinate with the given value at `pos`.
    pub fn insert(&self, pos: usize, value: bool) -> State {
        debug_assert!(pos <= self.arity());
        State::new(insert_bit(self.bits, pos, value), self.arity() + 1)
    }

    pub fn parse(text: &str) -> Result<State, ParseError> {
        let arity = text.chars().count();
        if arity > MAX_ARITY {
            return Err(ParseError::LiteralLength {
                expected: MAX_ARITY,
                found: arity,
            });
        }
        let mut bits = 0u64;
        for (position, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << position,
                ch => return Err(ParseError::LiteralCharacter { position, ch }),
            }
        }
        Ok(State::new(bits, arity))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}

/// Projects every state of `set` onto `indices`.
pub fn project_states<'a, I>(set: I, indices: &[usize]) -> Result<BTreeSet<State>>
where
    I: IntoIterator<Item = &'a State>,
{
    set.into_iter().map(|x| x.project(indices)).collect()
}

/// One coordinate of a subspace.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Trit {
    Zero,
    One,
    Free,
}

impl Trit {
    pub fn from_bool(b: bool) -> Trit {
        if b {
            Trit::One
        } else {
            Trit::Zero
        }
    }

    pub fn value(self) -> Option<bool> {
        match self {
            Trit::Zero => Some(false),
            Trit::One => Some(true),
            Trit::Free => None,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Trit::Zero => 0,
            Trit::One => 1,
            Trit::Free => 2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Free => '*',
        }
    }
}

/// A subspace of `{0,1}^n`: some coordinates fixed, the rest free.
///
/// `values` is always a subset of `fixed`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subspace {
    fixed: u64,
    values: u64,
    arity: u8,
}

impl Subspace {
    pub fn new(fixed: u64, values: u64, arity: usize) -> Subspace {
        check_arity(arity);
        let fixed = fixed & full_mask(arity);
        Subspace {
            fixed,
            values: values & fixed,
            arity: arity as u8,
        }
    }

    /// The whole state space.
    pub fn full(arity: usize) -> Subspace {
        Subspace::new(0, 0, arity)
    }

    /// The singleton subspace `{x}`.
    pub fn point(x: State) -> Subspace {
        Subspace::new(full_mask(x.arity()), x.bits(), x.arity())
    }

    pub fn from_trits(trits: &[Trit]) -> Subspace {
        let mut fixed = 0;
        let mut values = 0;
        for (i, t) in trits.iter().enumerate() {
            if let Some(v) = t.value() {
                fixed |= 1 << i;
                values |= (v as u64) << i;
            }
        }
        Subspace::new(fixed, values, trits.len())
    }

    pub fn parse(text: &str) -> Result<Subspace, ParseError> {
        let trits = text
            .chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                '0' => Ok(Trit::Zero),
                '1' => Ok(Trit::One),
                '*' | '⋆' => Ok(Trit::Free),
                ch => Err(ParseError::LiteralCharacter { position, ch }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if trits.len() > MAX_ARITY {
            return Err(ParseError::LiteralLength {
                expected: MAX_ARITY,
                found: trits.len(),
            });
        }
        Ok(Subspace::from_trits(&trits))
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn fixed_mask(&self) -> u64 {
        self.fixed
    }

    pub fn free_mask(&self) -> u64 {
        !self.fixed & full_mask(self.arity())
    }

    /// Values of the fixed coordinates (zero on free ones).
    pub fn values(&self) -> u64 {
        self.values
    }

    pub fn get(&self, i: usize) -> Trit {
        if (self.fixed >> i) & 1 == 0 {
            Trit::Free
        } else {
            Trit::from_bool((self.values >> i) & 1 == 1)
        }
    }

    pub fn with(&self, i: usize, trit: Trit) -> Subspace {
        let fixed = self.fixed & !(1 << i);
        let values = self.values & !(1 << i);
        match trit.value() {
            None => Subspace::new(fixed, values, self.arity()),
            Some(v) => Subspace::new(fixed | 1 << i, values | (v as u64) << i, self.arity()),
        }
    }

    pub fn trits(&self) -> Vec<Trit> {
        (0..self.arity()).map(|i| self.get(i)).collect()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        (self.fixed >> i) & 1 == 1
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed.count_ones() as usize
    }

    pub fn free_count(&self) -> usize {
        self.arity() - self.fixed_count()
    }

    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&i| self.is_fixed(i)).collect()
    }

    pub fn free_indices(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&i| !self.is_fixed(i)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.fixed == 0
    }

    /// Number of states, `2^(n - |fixed|)`.
    pub fn cardinality(&self) -> u128 {
        1u128 << self.free_count()
    }

    pub fn contains(&self, x: &State) -> bool {
        x.arity() == self.arity() && x.bits() & self.fixed == self.values
    }

    /// Set inclusion: every coordinate fixed in `other` is fixed to the same
    /// value here.
    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.arity == other.arity
            && self.fixed & other.fixed == other.fixed
            && self.values & other.fixed == other.values
    }

    pub fn intersect(&self, other: &Subspace) -> Option<Subspace> {
        debug_assert_eq!(self.arity, other.arity);
        let common = self.fixed & other.fixed;
        if self.values & common != other.values & common {
            return None;
        }
        Some(Subspace::new(
            self.fixed | other.fixed,
            self.values | other.values,
            self.arity(),
        ))
    }

    /// Smallest subspace containing both.
    pub fn hull(&self, other: &Subspace) -> Subspace {
        let agree = self.fixed & other.fixed & !(self.values ^ other.values);
        Subspace::new(agree, self.values, self.arity())
    }

    /// Smallest subspace containing a state.
    pub fn hull_state(&self, x: &State) -> Subspace {
        self.hull(&Subspace::point(*x))
    }

    /// Enumerates the member states in increasing numeric order.
    pub fn states(&self) -> SubspaceStates {
        SubspaceStates {
            base: self.values,
            free: self.free_mask(),
            next: Some(0),
            arity: self.arity(),
        }
    }

    pub fn project(&self, indices: &[usize]) -> Result<Subspace> {
        index_mask(indices, self.arity())?;
        Ok(Subspace::new(
            gather_bits(self.fixed, indices),
            gather_bits(self.values, indices),
            indices.len(),
        ))
    }

    /// Drops coordinate `pos` (projection onto the remaining components).
    pub fn remove(&self, pos: usize) -> Subspace {
        debug_assert!(pos < self.arity());
        Subspace::new(
            remove_bit(self.fixed, pos),
            remove_bit(self.values, pos),
            self.arity() - 1,
        )
    }

    /// Cylinder over `self`: inserts a free coordinate at `pos`.
    pub fn extend_free(&self, pos: usize) -> Subspace {
        debug_assert!(pos <= self.arity());
        Subspace::new(
            insert_bit(self.fixed, pos, false),
            insert_bit(self.values, pos, false),
            self.arity() + 1,
        )
    }

    /// Fixed coordinates shared with `other`.
    pub fn overlaps_fixed(&self, other: &Subspace) -> bool {
        self.fixed & other.fixed != 0
    }

    /// Canonical listing order: fewer fixed coordinates first, then
    /// lexicographic from component 1 with `0 < 1 < *`.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.fixed_count()
            .cmp(&other.fixed_count())
            .then_with(|| self.lex_cmp(other))
    }

    /// Lexicographic from component 1 with `0 < 1 < *`.
    pub fn lex_cmp(&self, other: &Subspace) -> Ordering {
        for i in 0..self.arity().min(other.arity()) {
            match self.get(i).rank().cmp(&other.get(i).rank()) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.arity.cmp(&other.arity)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity() {
            write!(f, "{}", self.get(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({self})")
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl serde::Serialize for State {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Iterator over the states of a subspace.
pub struct SubspaceStates {
    base: u64,
    free: u64,
    next: Option<u64>,
    arity: usize,
}

impl Iterator for SubspaceStates {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        let sub = self.next?;
        // Next subset of `free` in increasing order; wraps to 0 after the last.
        let succ = sub.wrapping_sub(self.free) & self.free;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(State::new(self.base | sub, self.arity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn sub(s: &str) -> Subspace {
        Subspace::parse(s).unwrap()
    }

    #[test]
    fn flip_examples() {
        assert_eq!(st("110").flip(&[2]).unwrap(), st("111"));
        assert_eq!(st("110").flip(&[]).unwrap(), st("110"));
        assert_eq!(st("000").flip(&[0, 1, 2]).unwrap(), st("111"));
        assert!(matches!(
            st("000").flip(&[3]),
            Err(BnError::IndexOutOfRange { index: 3, arity: 3 })
        ));
    }

    #[test]
    fn text_order_is_component_order() {
        let x = st("100");
        assert!(x.get(0));
        assert_eq!(x.bits(), 1);
        assert_eq!(x.to_string(), "100");
    }

    #[test]
    fn projections() {
        assert_eq!(sub("0**0").project(&[0, 1, 2]).unwrap(), sub("0**"));
        let set: BTreeSet<State> = [st("000"), st("111")].into_iter().collect();
        let projected = project_states(&set, &[0, 1]).unwrap();
        assert_eq!(projected, [st("00"), st("11")].into_iter().collect());
        let s = sub("1*0");
        assert_eq!(s.project(&[0, 1, 2]).unwrap(), s);
    }

    #[test]
    fn extend_free_examples() {
        assert_eq!(sub("*1").extend_free(2), sub("*1*"));
        assert_eq!(sub("00").extend_free(2), sub("00*"));
        assert_eq!(sub("**").extend_free(2), sub("***"));
        assert_eq!(sub("01").extend_free(0), sub("*01"));
    }

    #[test]
    fn membership_and_size() {
        let s = sub("*01");
        let members: Vec<String> = s.states().map(|x| x.to_string()).collect();
        assert_eq!(members, ["001", "101"]);
        assert_eq!(s.cardinality(), 2);
        assert_eq!(Subspace::full(3).states().count(), 8);
        assert_eq!(sub("101").states().count(), 1);
        assert!(s.contains(&st("101")));
        assert!(!s.contains(&st("011")));
    }

    #[test]
    fn inclusion_and_hull() {
        assert!(sub("000").is_subset_of(&sub("0**")));
        assert!(!sub("0**").is_subset_of(&sub("000")));
        assert!(!sub("1**").is_subset_of(&sub("0**")));
        assert_eq!(sub("00*").hull(&sub("01*")), sub("0**"));
        assert_eq!(sub("0*1").intersect(&sub("*01")), Some(sub("001")));
        assert_eq!(sub("0**").intersect(&sub("1**")), None);
    }

    #[test]
    fn canonical_order() {
        let mut v = [sub("000"), sub("***"), sub("00*"), sub("0**"), sub("*0*")];
        v.sort();
        let names: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["***", "0**", "*0*", "00*", "000"]);
    }

    #[test]
    fn bad_literals() {
        assert!(matches!(
            Subspace::parse("0x*"),
            Err(ParseError::LiteralCharacter { position: 1, ch: 'x' })
        ));
        assert!(State::parse("0*").is_err());
    }

    #[test]
    fn insert_remove_roundtrip() {
        for bits in 0..32u64 {
            let x = State::new(bits, 5);
            for pos in 0..5 {
                let y = x.remove(pos);
                assert_eq!(y.insert(pos, x.get(pos)), x);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
            (any::<u64>(), any::<u64>()).prop_map(move |(f, v)| Subspace::new(f, v, n))
        }

        proptest! {
            #[test]
            fn cardinality_matches_enumeration(s in subspace(8)) {
                prop_assert_eq!(s.states().count() as u128, s.cardinality());
                prop_assert!(s.states().all(|x| s.contains(&x)));
            }

            #[test]
            fn flip_is_involution(bits in any::<u64>(), mask in any::<u64>()) {
                let x = State::new(bits, 9);
                let idx: Vec<usize> = (0..9).filter(|i| mask >> i & 1 == 1).collect();
                prop_assert_eq!(x.flip(&idx).unwrap().flip(&idx).unwrap(), x);
                let y = x.flip(&idx).unwrap();
                for i in 0..9 {
                    prop_assert_eq!(y.get(i) != x.get(i), idx.contains(&i));
                }
            }

            #[test]
            fn extend_then_project_is_identity(s in subspace(6), pos in 0usize..=6) {
                let ext = s.extend_free(pos);
                prop_assert_eq!(ext.get(pos), Trit::Free);
                prop_assert_eq!(ext.remove(pos), s);
                prop_assert_eq!(ext.remove(pos).extend_free(pos).remove(pos), s);
            }

            #[test]
            fn inclusion_matches_set_semantics(a in subspace(5), b in subspace(5)) {
                let set_incl = a.states().all(|x| b.contains(&x));
                prop_assert_eq!(a.is_subset_of(&b), set_incl);
            }
        }
    }
}
