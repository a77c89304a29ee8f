//! Propositional update expressions.

use std::fmt;

use crate::table::{var_word, word_count, TruthTable};

/// Expression tree over component indices.
///
/// Conjunctions and disjunctions are n-ary and always carry at least two
/// operands when built through [`BoolExpr::and`] / [`BoolExpr::or`], which
/// keeps rendering and re-parsing structurally stable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BoolExpr {
    Const(bool),
    Var(usize),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
}

impl BoolExpr {
    pub fn var(i: usize) -> BoolExpr {
        BoolExpr::Var(i)
    }

    pub fn constant(b: bool) -> BoolExpr {
        BoolExpr::Const(b)
    }

    pub fn negate(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(mut operands: Vec<BoolExpr>) -> BoolExpr {
        match operands.len() {
            0 => BoolExpr::Const(true),
            1 => operands.pop().unwrap(),
            _ => BoolExpr::And(operands),
        }
    }

    pub fn or(mut operands: Vec<BoolExpr>) -> BoolExpr {
        match operands.len() {
            0 => BoolExpr::Const(false),
            1 => operands.pop().unwrap(),
            _ => BoolExpr::Or(operands),
        }
    }

    /// Evaluates at the state whose bit `i` is the value of component `i`.
    pub fn eval(&self, bits: u64) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(i) => (bits >> i) & 1 == 1,
            BoolExpr::Not(e) => !e.eval(bits),
            BoolExpr::And(es) => es.iter().all(|e| e.eval(bits)),
            BoolExpr::Or(es) => es.iter().any(|e| e.eval(bits)),
        }
    }

    fn eval_word(&self, word: usize) -> u64 {
        match self {
            BoolExpr::Const(b) => {
                if *b {
                    u64::MAX
                } else {
                    0
                }
            }
            BoolExpr::Var(i) => var_word(*i, word),
            BoolExpr::Not(e) => !e.eval_word(word),
            BoolExpr::And(es) => es.iter().fold(u64::MAX, |acc, e| acc & e.eval_word(word)),
            BoolExpr::Or(es) => es.iter().fold(0, |acc, e| acc | e.eval_word(word)),
        }
    }

    /// Full truth table over `arity` variables, 64 states per word.
    pub fn truth_table(&self, arity: usize) -> TruthTable {
        let words = (0..word_count(arity)).map(|w| self.eval_word(w)).collect();
        TruthTable::from_words(words, arity)
    }

    /// Variables occurring syntactically, as a bit mask.
    pub fn support(&self) -> u64 {
        match self {
            BoolExpr::Const(_) => 0,
            BoolExpr::Var(i) => 1 << i,
            BoolExpr::Not(e) => e.support(),
            BoolExpr::And(es) | BoolExpr::Or(es) => es.iter().fold(0, |acc, e| acc | e.support()),
        }
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.support() >> var & 1 == 1
    }

    pub fn node_count(&self) -> usize {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => 1,
            BoolExpr::Not(e) => 1 + e.node_count(),
            BoolExpr::And(es) | BoolExpr::Or(es) => 1 + es.iter().map(BoolExpr::node_count).sum::<usize>(),
        }
    }

    /// Replaces every occurrence of `var` by `replacement`.
    pub fn substitute(&self, var: usize, replacement: &BoolExpr) -> BoolExpr {
        match self {
            BoolExpr::Var(i) if *i == var => replacement.clone(),
            BoolExpr::Const(_) | BoolExpr::Var(_) => self.clone(),
            BoolExpr::Not(e) => BoolExpr::negate(e.substitute(var, replacement)),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|e| e.substitute(var, replacement)).collect()),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|e| e.substitute(var, replacement)).collect()),
        }
    }

    /// Renames variables.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> BoolExpr {
        match self {
            BoolExpr::Const(_) => self.clone(),
            BoolExpr::Var(i) => BoolExpr::Var(f(*i)),
            BoolExpr::Not(e) => BoolExpr::negate(e.map_vars(f)),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|e| e.map_vars(f)).collect()),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|e| e.map_vars(f)).collect()),
        }
    }

    /// Substitutes the fixed coordinates (`fixed` mask, `values`) and folds
    /// constants. The residual expression only mentions free variables.
    pub fn partial_eval(&self, fixed: u64, values: u64) -> BoolExpr {
        match self {
            BoolExpr::Const(_) => self.clone(),
            BoolExpr::Var(i) => {
                if fixed >> i & 1 == 1 {
                    BoolExpr::Const(values >> i & 1 == 1)
                } else {
                    self.clone()
                }
            }
            BoolExpr::Not(e) => match e.partial_eval(fixed, values) {
                BoolExpr::Const(b) => BoolExpr::Const(!b),
                BoolExpr::Not(inner) => *inner,
                r => BoolExpr::negate(r),
            },
            BoolExpr::And(es) => {
                let mut kept = Vec::with_capacity(es.len());
                for e in es {
                    match e.partial_eval(fixed, values) {
                        BoolExpr::Const(false) => return BoolExpr::Const(false),
                        BoolExpr::Const(true) => {}
                        r => kept.push(r),
                    }
                }
                BoolExpr::and(kept)
            }
            BoolExpr::Or(es) => {
                let mut kept = Vec::with_capacity(es.len());
                for e in es {
                    match e.partial_eval(fixed, values) {
                        BoolExpr::Const(true) => return BoolExpr::Const(true),
                        BoolExpr::Const(false) => {}
                        r => kept.push(r),
                    }
                }
                BoolExpr::or(kept)
            }
        }
    }

    /// Constant folding only.
    pub fn fold_constants(&self) -> BoolExpr {
        self.partial_eval(0, 0)
    }

    /// Renders with the given component names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> ExprDisplay<'a, S> {
        ExprDisplay { expr: self, names }
    }
}

pub struct ExprDisplay<'a, S> {
    expr: &'a BoolExpr,
    names: &'a [S],
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Top,
    Or,
    And,
    Unary,
}

impl<S: AsRef<str>> ExprDisplay<'_, S> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &BoolExpr, context: Level) -> fmt::Result {
        let (own, sep, operands) = match e {
            BoolExpr::Const(b) => return f.write_str(if *b { "1" } else { "0" }),
            BoolExpr::Var(i) => return f.write_str(self.names[*i].as_ref()),
            BoolExpr::Not(inner) => {
                f.write_str("!")?;
                return self.write(f, inner, Level::Unary);
            }
            BoolExpr::And(es) => (Level::And, " & ", es),
            BoolExpr::Or(es) => (Level::Or, " | ", es),
        };
        // Nested operators of the same kind keep their parentheses so the
        // rendered text re-parses to the same tree.
        let parens = context >= own;
        if parens {
            f.write_str("(")?;
        }
        for (k, operand) in operands.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            self.write(f, operand, own)?;
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<S: AsRef<str>> fmt::Display for ExprDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.expr, Level::Top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> BoolExpr {
        BoolExpr::var(i)
    }

    fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::negate(e)
    }

    const NAMES: [&str; 3] = ["x1", "x2", "x3"];

    #[test]
    fn renders_with_minimal_parentheses() {
        let f1 = BoolExpr::or(vec![
            BoolExpr::and(vec![v(0), not(v(1))]),
            BoolExpr::and(vec![v(0), v(2)]),
        ]);
        assert_eq!(f1.display(&NAMES).to_string(), "x1 & !x2 | x1 & x3");
        let g = BoolExpr::and(vec![BoolExpr::or(vec![v(0), v(1)]), not(v(2))]);
        assert_eq!(g.display(&NAMES).to_string(), "(x1 | x2) & !x3");
        let h = not(BoolExpr::and(vec![v(0), v(1)]));
        assert_eq!(h.display(&NAMES).to_string(), "!(x1 & x2)");
        let nested = BoolExpr::and(vec![v(0), BoolExpr::and(vec![v(1), v(2)])]);
        assert_eq!(nested.display(&NAMES).to_string(), "x1 & (x2 & x3)");
    }

    #[test]
    fn truth_table_agrees_with_eval() {
        let e = BoolExpr::or(vec![
            BoolExpr::and(vec![v(0), not(v(7))]),
            BoolExpr::and(vec![v(3), v(6), not(v(0))]),
        ]);
        let t = e.truth_table(8);
        for x in 0..256 {
            assert_eq!(t.get(x), e.eval(x));
        }
    }

    #[test]
    fn partial_evaluation_folds() {
        // x1 & !x2 | x1 & x3 with x1 = 0 -> 0
        let e = BoolExpr::or(vec![
            BoolExpr::and(vec![v(0), not(v(1))]),
            BoolExpr::and(vec![v(0), v(2)]),
        ]);
        assert_eq!(e.partial_eval(0b001, 0), BoolExpr::Const(false));
        assert_eq!(e.partial_eval(0b001, 0b001).display(&NAMES).to_string(), "!x2 | x3");
        assert_eq!(e.partial_eval(0b101, 0b101), BoolExpr::Const(true));
    }

    #[test]
    fn substitution() {
        let e = BoolExpr::and(vec![v(0), not(v(2))]);
        let s = e.substitute(2, &v(1));
        assert_eq!(s.display(&NAMES).to_string(), "x1 & !x2");
        assert!(!s.mentions(2));
    }
}
