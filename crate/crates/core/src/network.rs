use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{BnError, Result};
use crate::expr::BoolExpr;
use crate::state::{State, MAX_ARITY};
use crate::table::TruthTable;

/// Truth tables are memoised only up to this many components.
pub const TABLE_ARITY_CAP: usize = 24;

/// A Boolean network `f: {0,1}^n -> {0,1}^n` with one named rule per component.
pub struct BooleanNetwork {
    names: Vec<String>,
    rules: Vec<BoolExpr>,
    tables: OnceLock<Arc<[TruthTable]>>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl BooleanNetwork {
    pub fn new(names: Vec<String>, rules: Vec<BoolExpr>) -> Result<BooleanNetwork> {
        let n = names.len();
        if n == 0 {
            return Err(BnError::InvalidNetwork("a network needs at least one component".into()));
        }
        if n > MAX_ARITY {
            return Err(BnError::Capacity {
                what: "network",
                arity: n,
                cap: MAX_ARITY,
            });
        }
        if rules.len() != n {
            return Err(BnError::ArityMismatch {
                expected: n,
                found: rules.len(),
            });
        }
        for (k, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(BnError::InvalidNetwork(format!("`{name}` is not a valid identifier")));
            }
            if names[..k].contains(name) {
                return Err(BnError::InvalidNetwork(format!("duplicate component `{name}`")));
            }
        }
        for (k, rule) in rules.iter().enumerate() {
            if n < 64 && rule.support() >> n != 0 {
                return Err(BnError::InvalidNetwork(format!(
                    "rule of `{}` refers to a variable index beyond {n}",
                    names[k]
                )));
            }
        }
        Ok(BooleanNetwork {
            names,
            rules,
            tables: OnceLock::new(),
        })
    }

    /// Components named `x1..xn`.
    pub fn from_rules(rules: Vec<BoolExpr>) -> Result<BooleanNetwork> {
        let names = (1..=rules.len()).map(|i| format!("x{i}")).collect();
        BooleanNetwork::new(names, rules)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn rules(&self) -> &[BoolExpr] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &BoolExpr {
        &self.rules[i]
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves a component by name, or by 1-based position as a fallback.
    pub fn resolve_component(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.component_index(key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(k) if (1..=self.arity()).contains(&k) => Ok(k - 1),
            _ => Err(BnError::UnknownComponent(key.to_string())),
        }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.arity() {
            Ok(())
        } else {
            Err(BnError::IndexOutOfRange {
                index: i,
                arity: self.arity(),
            })
        }
    }

    pub(crate) fn check_state(&self, x: &State) -> Result<()> {
        if x.arity() == self.arity() {
            Ok(())
        } else {
            Err(BnError::ArityMismatch {
                expected: self.arity(),
                found: x.arity(),
            })
        }
    }

    /// Memoised truth tables, one per component.
    pub fn truth_tables(&self) -> Result<&[TruthTable]> {
        let n = self.arity();
        if n > TABLE_ARITY_CAP {
            return Err(BnError::Capacity {
                what: "truth table",
                arity: n,
                cap: TABLE_ARITY_CAP,
            });
        }
        Ok(self
            .tables
            .get_or_init(|| self.rules.iter().map(|r| r.truth_table(n)).collect()))
    }

    /// `f(x)` on packed bits.
    #[inline]
    pub fn image_bits(&self, bits: u64) -> u64 {
        match self.truth_tables() {
            Ok(tables) => tables
                .iter()
                .enumerate()
                .fold(0, |acc, (i, t)| acc | (t.get(bits) as u64) << i),
            Err(_) => self
                .rules
                .iter()
                .enumerate()
                .fold(0, |acc, (i, r)| acc | (r.eval(bits) as u64) << i),
        }
    }

    /// `f_i(x)` on packed bits.
    #[inline]
    pub fn component_bits(&self, i: usize, bits: u64) -> bool {
        match self.truth_tables() {
            Ok(tables) => tables[i].get(bits),
            Err(_) => self.rules[i].eval(bits),
        }
    }

    pub fn evaluate(&self, x: &State) -> Result<State> {
        self.check_state(x)?;
        Ok(State::new(self.image_bits(x.bits()), self.arity()))
    }

    pub fn is_fixed_point(&self, x: &State) -> Result<bool> {
        Ok(self.evaluate(x)? == *x)
    }

    /// Same rule set with a different rule for component `i`.
    pub fn with_rule(&self, i: usize, rule: BoolExpr) -> Result<BooleanNetwork> {
        self.check_index(i)?;
        let mut rules = self.rules.clone();
        rules[i] = rule;
        BooleanNetwork::new(self.names.clone(), rules)
    }

    /// Same network with every rule replaced.
    pub fn with_rules(&self, rules: Vec<BoolExpr>) -> Result<BooleanNetwork> {
        BooleanNetwork::new(self.names.clone(), rules)
    }

    /// Whether both networks define the same map (exhaustive comparison).
    pub fn same_function(&self, other: &BooleanNetwork) -> Result<bool> {
        if self.arity() != other.arity() {
            return Ok(false);
        }
        let (a, b) = (self.truth_tables()?, other.truth_tables()?);
        Ok(a == b)
    }
}

impl Clone for BooleanNetwork {
    fn clone(&self) -> Self {
        BooleanNetwork {
            names: self.names.clone(),
            rules: self.rules.clone(),
            tables: self.tables.clone(),
        }
    }
}

impl PartialEq for BooleanNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.rules == other.rules
    }
}

impl Eq for BooleanNetwork {}

impl fmt::Debug for BooleanNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (name, rule) in self.names.iter().zip(&self.rules) {
            list.entry(&format_args!("{name}, {}", rule.display(&self.names)));
        }
        list.finish()
    }
}
