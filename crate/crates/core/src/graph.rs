//! Signed interaction graph.

use std::fmt;

use crate::error::Result;
use crate::network::BooleanNetwork;

/// Sign set of one edge. Both flags may be set for non-monotone dependence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSign {
    pub positive: bool,
    pub negative: bool,
}

impl EdgeSign {
    pub fn is_present(self) -> bool {
        self.positive || self.negative
    }

    pub fn symbol(self) -> &'static str {
        match (self.positive, self.negative) {
            (true, true) => "+-",
            (true, false) => "+",
            (false, true) => "-",
            (false, false) => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedInteractionGraph {
    arity: usize,
    // row-major: signs[source * arity + target]
    signs: Vec<EdgeSign>,
}

impl SignedInteractionGraph {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn sign(&self, source: usize, target: usize) -> EdgeSign {
        self.signs[source * self.arity + target]
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.sign(source, target).is_present()
    }

    pub fn has_positive(&self, source: usize, target: usize) -> bool {
        self.sign(source, target).positive
    }

    pub fn has_negative(&self, source: usize, target: usize) -> bool {
        self.sign(source, target).negative
    }

    /// Components with an edge into `target`, ascending.
    pub fn regulators(&self, target: usize) -> Vec<usize> {
        (0..self.arity).filter(|&s| self.has_edge(s, target)).collect()
    }

    /// Components that `source` has an edge into, ascending.
    pub fn targets(&self, source: usize) -> Vec<usize> {
        (0..self.arity).filter(|&t| self.has_edge(source, t)).collect()
    }

    /// All edges as `(source, target, sign)`, ordered by source then target.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeSign)> {
        let mut out = Vec::new();
        for s in 0..self.arity {
            for t in 0..self.arity {
                let sign = self.sign(s, t);
                if sign.is_present() {
                    out.push((s, t, sign));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_present()).count()
    }

    /// Every signed edge of `self` also appears, with that sign, in `other`.
    pub fn is_subgraph_of(&self, other: &SignedInteractionGraph) -> bool {
        self.arity == other.arity
            && self
                .signs
                .iter()
                .zip(&other.signs)
                .all(|(a, b)| (!a.positive || b.positive) && (!a.negative || b.negative))
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> GraphDisplay<'a, S> {
        GraphDisplay { graph: self, names }
    }
}

pub struct GraphDisplay<'a, S> {
    graph: &'a SignedInteractionGraph,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for GraphDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, t, sign)) in self.graph.edges().into_iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(
                f,
                "{} -> {} ({})",
                self.names[s].as_ref(),
                self.names[t].as_ref(),
                sign.symbol()
            )?;
        }
        Ok(())
    }
}

/// Edges by exhaustive comparison of `f_j(x)` against `f_j` at `x` with bit `i` flipped.
pub fn interaction_graph(net: &BooleanNetwork) -> Result<SignedInteractionGraph> {
    let n = net.arity();
    let tables = net.truth_tables()?;
    let mut signs = vec![EdgeSign::default(); n * n];
    for (target, table) in tables.iter().enumerate() {
        for source in 0..n {
            let (up, down) = table.dependence(source);
            signs[source * n + target] = EdgeSign {
                positive: up,
                negative: down,
            };
        }
    }
    Ok(SignedInteractionGraph { arity: n, signs })
}

pub fn is_autoregulated(net: &BooleanNetwork, i: usize) -> Result<bool> {
    net.check_index(i)?;
    let (up, down) = net.truth_tables()?[i].dependence(i);
    Ok(up || down)
}

/// Sign set of the self-loop on `i`.
pub fn self_loop(net: &BooleanNetwork, i: usize) -> Result<EdgeSign> {
    net.check_index(i)?;
    let (positive, negative) = net.truth_tables()?[i].dependence(i);
    Ok(EdgeSign { positive, negative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_network;
    use crate::state::State;

    fn fig1a() -> BooleanNetwork {
        parse_network("x1, x1 & !x2 | x1 & x3\nx2, x1 & !x3\nx3, x2").unwrap()
    }

    fn pos() -> EdgeSign {
        EdgeSign {
            positive: true,
            negative: false,
        }
    }

    fn neg() -> EdgeSign {
        EdgeSign {
            positive: false,
            negative: true,
        }
    }

    #[test]
    fn fig1a_edges() {
        let g = interaction_graph(&fig1a()).unwrap();
        let expected = vec![
            (0, 0, pos()),
            (0, 1, pos()),
            (1, 0, neg()),
            (1, 2, pos()),
            (2, 0, pos()),
            (2, 1, neg()),
        ];
        assert_eq!(g.edges(), expected);
        assert_eq!(g.regulators(0), vec![0, 1, 2]);
        assert_eq!(g.targets(2), vec![0, 1]);
    }

    #[test]
    fn constant_network_has_no_edges() {
        let net = parse_network("a, 0\nb, 1").unwrap();
        assert_eq!(interaction_graph(&net).unwrap().edge_count(), 0);
        assert!(!is_autoregulated(&net, 0).unwrap());
    }

    #[test]
    fn negation_gives_negative_self_loop() {
        let net = parse_network("a, !a").unwrap();
        let g = interaction_graph(&net).unwrap();
        assert_eq!(g.edges(), vec![(0, 0, neg())]);
        assert_eq!(self_loop(&net, 0).unwrap(), neg());
    }

    #[test]
    fn xor_gives_both_signs() {
        let net = parse_network("a, a & !b | !a & b\nb, b").unwrap();
        let g = interaction_graph(&net).unwrap();
        assert_eq!(g.sign(1, 0).symbol(), "+-");
    }

    #[test]
    fn autoregulation_in_fig1a() {
        let f = fig1a();
        assert!(is_autoregulated(&f, 0).unwrap());
        assert!(!is_autoregulated(&f, 2).unwrap());
    }

    #[test]
    fn absent_edges_mean_no_dependence() {
        let f = fig1a();
        let g = interaction_graph(&f).unwrap();
        for s in 0..3 {
            for t in 0..3 {
                let mut differs = false;
                for x in 0..8u64 {
                    let y = State::new(x ^ (1 << s), 3);
                    let fx = f.evaluate(&State::new(x, 3)).unwrap();
                    differs |= fx.get(t) != f.evaluate(&y).unwrap().get(t);
                }
                assert_eq!(differs, g.has_edge(s, t));
            }
        }
    }
}
