//! Finite pattern families.

use crate::canon::is_isomorphic;
use crate::error::{input, Result};
use crate::graph::Graph;
use crate::pattern::is_topological_minor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub members: Vec<Graph>,
}

impl Family {
    /// Non-empty family of non-empty graphs.
    pub fn new(name: impl Into<String>, members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return input("family must be non-empty");
        }
        if members.iter().any(|h| h.n() == 0) {
            return input("family members must be non-empty graphs");
        }
        Ok(Family { name: name.into(), members })
    }

    /// Parses a single named graph: pN, cN, kN, kA,B, kA_B, diamond.
    pub fn graph_by_name(s: &str) -> Result<Graph> {
        let t = s.trim().to_ascii_lowercase();
        if t == "diamond" {
            return Ok(Graph::diamond());
        }
        let num = |x: &str| x.parse::<usize>().map_err(|_| crate::Error::Input(format!("unknown graph name {s:?}")));
        let (head, rest) = t.split_at(t.chars().next().map_or(0, |c| c.len_utf8()));
        match head {
            "p" if num(rest)? >= 1 => Ok(Graph::path(num(rest)?)),
            "c" if num(rest)? >= 3 => Ok(Graph::cycle(num(rest)?)),
            "k" => {
                if let Some((a, b)) = rest.split_once([',', '_']) {
                    Ok(Graph::complete_bipartite(num(a)?, num(b)?))
                } else if num(rest)? >= 1 {
                    Ok(Graph::complete(num(rest)?))
                } else {
                    input(format!("unknown graph name {s:?}"))
                }
            }
            _ => input(format!("unknown graph name {s:?}")),
        }
    }

    /// Single-member family from a graph name.
    pub fn named(s: &str) -> Result<Self> {
        Family::new(s.trim().to_ascii_uppercase(), vec![Family::graph_by_name(s)?])
    }

    pub fn p3() -> Self {
        Family::named("p3").unwrap()
    }

    pub fn p4() -> Self {
        Family::named("p4").unwrap()
    }

    pub fn c4() -> Self {
        Family::named("c4").unwrap()
    }

    /// max(largest member order, number of members).
    pub fn size(&self) -> usize {
        self.members.iter().map(Graph::n).max().unwrap_or(0).max(self.members.len())
    }

    pub fn is_connected(&self) -> bool {
        self.members.iter().all(Graph::is_connected)
    }

    /// Drops members that contain another member as a topological minor, and
    /// isomorphic duplicates.
    pub fn antichain(&self) -> Result<Family> {
        let mut keep: Vec<Graph> = Vec::new();
        let mut order: Vec<&Graph> = self.members.iter().collect();
        order.sort_by_key(|h| (h.n(), h.m()));
        for h in order {
            let mut dominated = false;
            for k in &keep {
                if is_isomorphic(k, h) || is_topological_minor(k, h)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                keep.push(h.clone());
            }
        }
        Family::new(self.name.clone(), keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(Family::graph_by_name("P6").unwrap(), Graph::path(6));
        assert_eq!(Family::graph_by_name("k2,3").unwrap(), Graph::complete_bipartite(2, 3));
        assert_eq!(Family::graph_by_name("c5").unwrap(), Graph::cycle(5));
        assert!(Family::graph_by_name("x3").is_err());
        assert!(Family::graph_by_name("c2").is_err());
    }

    #[test]
    fn size_and_antichain() {
        let f = Family::new("f", vec![Graph::cycle(3), Graph::complete(4), Graph::path(2)]).unwrap();
        assert_eq!(f.size(), 4);
        let a = f.antichain().unwrap();
        assert_eq!(a.members, vec![Graph::path(2)]);
        assert!(Family::new("e", vec![]).is_err());
        assert!(Family::new("e", vec![Graph::new(0)]).is_err());
    }
}
