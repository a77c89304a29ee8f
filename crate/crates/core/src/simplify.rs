//! Two-level simplification for rules touched by elimination.

use crate::expr::BoolExpr;

/// Rules over more variables than this are only constant-folded.
pub const MAX_SIMPLIFY_SUPPORT: usize = 8;

/// A product term over local variable positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cube {
    care: u32,
    values: u32,
}

impl Cube {
    fn covers(self, minterm: u32) -> bool {
        minterm & self.care == self.values
    }

    fn literal_count(self) -> u32 {
        self.care.count_ones()
    }

    /// Sort key: fewer literals first, then by variables in ascending order
    /// with positive before negative.
    fn key(self, k: usize) -> (u32, Vec<(usize, bool)>) {
        let lits = (0..k)
            .filter(|&v| self.care >> v & 1 == 1)
            .map(|v| (v, self.values >> v & 1 == 0))
            .collect();
        (self.literal_count(), lits)
    }
}

/// Prime implicants of the on-set of a `k`-variable function.
fn prime_implicants(on: &[bool], k: usize) -> Vec<Cube> {
    let full = (1u32 << k) - 1;
    let is_implicant = |c: Cube| {
        let free = full & !c.care;
        let mut sub = free;
        loop {
            if !on[(c.values | sub) as usize] {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & free;
        }
    };
    let mut primes = Vec::new();
    for care in 0..=full {
        let mut values = care;
        loop {
            let cube = Cube { care, values };
            if is_implicant(cube) {
                let widened = (0..k).any(|v| {
                    care >> v & 1 == 1
                        && is_implicant(Cube {
                            care: care & !(1 << v),
                            values: values & !(1 << v),
                        })
                });
                if !widened {
                    primes.push(cube);
                }
            }
            if values == 0 {
                break;
            }
            values = (values - 1) & care;
        }
    }
    primes
}

/// Essential primes, then greedy cover.
fn cover(on: &[bool], k: usize) -> Vec<Cube> {
    let mut primes = prime_implicants(on, k);
    primes.sort_by_key(|c| c.key(k));
    let minterms: Vec<u32> = (0..on.len() as u32).filter(|&m| on[m as usize]).collect();
    let mut chosen: Vec<Cube> = Vec::new();
    let mut covered = vec![false; on.len()];
    for &m in &minterms {
        let mut covering = primes.iter().filter(|c| c.covers(m));
        let first = *covering.next().expect("every minterm has a prime");
        if covering.next().is_none() && !chosen.contains(&first) {
            chosen.push(first);
        }
    }
    for c in &chosen {
        for &m in &minterms {
            covered[m as usize] |= c.covers(m);
        }
    }
    loop {
        let best = primes
            .iter()
            .filter(|c| !chosen.contains(c))
            .map(|&c| {
                let gain = minterms
                    .iter()
                    .filter(|&&m| !covered[m as usize] && c.covers(m))
                    .count();
                (gain, c)
            })
            .filter(|(gain, _)| *gain > 0)
            // max_by_key keeps the last maximum; reverse so the earliest prime wins ties
            .rev()
            .max_by_key(|(gain, _)| *gain);
        let Some((_, c)) = best else { break };
        chosen.push(c);
        for &m in &minterms {
            covered[m as usize] |= c.covers(m);
        }
    }
    chosen.sort_by_key(|c| c.key(k));
    chosen
}

/// Sum-of-products form of `expr` over its support.
pub fn minimal_dnf(expr: &BoolExpr) -> Option<BoolExpr> {
    let support = expr.support();
    let vars: Vec<usize> = (0..64).filter(|&v| support >> v & 1 == 1).collect();
    let k = vars.len();
    if k > MAX_SIMPLIFY_SUPPORT {
        return None;
    }
    let on: Vec<bool> = (0..1u32 << k)
        .map(|m| {
            let bits = vars
                .iter()
                .enumerate()
                .fold(0u64, |acc, (p, &v)| acc | ((m >> p & 1) as u64) << v);
            expr.eval(bits)
        })
        .collect();
    if on.iter().all(|&b| !b) {
        return Some(BoolExpr::Const(false));
    }
    if on.iter().all(|&b| b) {
        return Some(BoolExpr::Const(true));
    }
    let terms = cover(&on, k)
        .into_iter()
        .map(|c| {
            BoolExpr::and(
                (0..k)
                    .filter(|&p| c.care >> p & 1 == 1)
                    .map(|p| {
                        let lit = BoolExpr::var(vars[p]);
                        if c.values >> p & 1 == 1 {
                            lit
                        } else {
                            BoolExpr::negate(lit)
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Some(BoolExpr::or(terms))
}

/// The smaller of the constant-folded expression and its minimal DNF.
/// Ties keep the folded form, which stays closer to the input text.
pub fn simplify(expr: &BoolExpr) -> BoolExpr {
    let folded = expr.fold_constants();
    match minimal_dnf(&folded) {
        Some(dnf) if dnf.node_count() < folded.node_count() => dnf,
        _ => folded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_network;

    fn rule(text: &str) -> BoolExpr {
        let doc = format!("a, {text}\nb, b\nc, c\nd, d");
        parse_network(&doc).unwrap().rule(0).clone()
    }

    const NAMES: [&str; 4] = ["a", "b", "c", "d"];

    fn show(e: &BoolExpr) -> String {
        e.display(&NAMES).to_string()
    }

    #[test]
    fn absorbs_complementary_terms() {
        assert_eq!(show(&simplify(&rule("a & !b | a & b"))), "a");
        assert_eq!(show(&simplify(&rule("a & !a"))), "0");
        assert_eq!(show(&simplify(&rule("a | !a"))), "1");
        assert_eq!(show(&simplify(&rule("a & !b | a & !a | b & a & !a"))), "a & !b");
    }

    #[test]
    fn keeps_form_on_ties() {
        assert_eq!(show(&simplify(&rule("a & !b"))), "a & !b");
        assert_eq!(show(&simplify(&rule("c | b & !a"))), "c | b & !a");
    }

    #[test]
    fn dnf_is_equivalent() {
        for text in [
            "a & b | !c & d | a & !d",
            "!(a | b) & (c | d)",
            "a & b & c | a & b & !c | !a & d",
            "(a | b) & (c | !d) & (!a | d)",
        ] {
            let e = rule(text);
            let d = minimal_dnf(&e).unwrap();
            for x in 0..16 {
                assert_eq!(e.eval(x), d.eval(x), "{text}");
            }
        }
    }

    #[test]
    fn covers_with_essential_primes() {
        // majority of three
        let e = rule("a & b | a & c | b & c | a & b & c");
        assert_eq!(show(&simplify(&e)), "a & b | a & c | b & c");
    }
}
