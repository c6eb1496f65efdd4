//! Boundaried graphs: a graph with some vertices carrying distinct positive
//! labels. Gluing, merging, restriction, relabelling and folios.

use crate::canon::{canonical_form, CanonCode};
use crate::error::{capability, input, Result};
use crate::graph::Graph;
use crate::pattern::{contains_family_tm, is_rooted_topological_minor};
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    pub graph: Graph,
    /// Label per vertex; `None` for non-boundary vertices.
    pub labels: Vec<Option<u32>>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, labels: Vec<Option<u32>>) -> Result<Self> {
        if labels.len() != graph.n() {
            return input("label vector length differs from vertex count");
        }
        let mut seen = HashSet::new();
        for l in labels.iter().flatten() {
            if *l == 0 || !seen.insert(*l) {
                return input(format!("labels must be distinct and positive (got {l})"));
            }
        }
        Ok(BoundariedGraph { graph, labels })
    }

    /// Boundary-free wrapper.
    pub fn plain(graph: Graph) -> Self {
        let n = graph.n();
        BoundariedGraph { graph, labels: vec![None; n] }
    }

    pub fn empty() -> Self {
        BoundariedGraph::plain(Graph::new(0))
    }

    pub fn boundary(&self) -> Vec<usize> {
        let mut b: Vec<usize> = (0..self.graph.n()).filter(|&v| self.labels[v].is_some()).collect();
        b.sort_by_key(|&v| self.labels[v]);
        b
    }

    pub fn boundary_size(&self) -> usize {
        self.labels.iter().flatten().count()
    }

    /// Sorted label set.
    pub fn label_set(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.labels.iter().flatten().copied().collect();
        l.sort_unstable();
        l
    }

    pub fn has_label(&self, l: u32) -> bool {
        self.labels.contains(&Some(l))
    }

    pub fn vertex_with_label(&self, l: u32) -> Option<usize> {
        self.labels.iter().position(|&x| x == Some(l))
    }

    /// Rank of the vertex's label within the label set, 1-based.
    pub fn psi(&self, v: usize) -> Option<usize> {
        let l = self.labels[v]?;
        Some(self.labels.iter().flatten().filter(|&&x| x <= l).count())
    }

    pub fn is_consecutive(&self) -> bool {
        self.label_set().iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    pub fn non_boundary_count(&self) -> usize {
        self.graph.n() - self.boundary_size()
    }

    /// Isomorphism key respecting labels.
    pub fn canonical_key(&self) -> CanonCode {
        let colors: Vec<u32> = self.labels.iter().map(|l| l.unwrap_or(0)).collect();
        canonical_form(&self.graph, &colors).0
    }

    /// Same graph with vertices in canonical order.
    pub fn canonical(&self) -> BoundariedGraph {
        let colors: Vec<u32> = self.labels.iter().map(|l| l.unwrap_or(0)).collect();
        let (_, order) = canonical_form(&self.graph, &colors);
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::new(order.len());
        for (u, v) in self.graph.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        let labels = order.iter().map(|&v| self.labels[v]).collect();
        BoundariedGraph { graph: g, labels }
    }
}

/// Glue along equal ψ-indices; the result is a plain simple graph.
pub fn glue(a: &BoundariedGraph, b: &BoundariedGraph) -> Result<Graph> {
    let (ba, bb) = (a.boundary(), b.boundary());
    if ba.len() != bb.len() {
        return input("glue needs equal boundary sizes");
    }
    let mut map = vec![usize::MAX; b.graph.n()];
    for (i, &v) in bb.iter().enumerate() {
        map[v] = ba[i];
    }
    let mut g = a.graph.clone();
    for v in 0..b.graph.n() {
        if map[v] == usize::MAX {
            map[v] = g.add_vertex();
        }
    }
    for (u, v) in b.graph.edges() {
        g.add_edge(map[u], map[v]);
    }
    Ok(g)
}

/// Merge identifying vertices with equal labels.
pub fn merge(a: &BoundariedGraph, b: &BoundariedGraph) -> BoundariedGraph {
    let mut g = a.graph.clone();
    let mut labels = a.labels.clone();
    let mut map = vec![usize::MAX; b.graph.n()];
    for v in 0..b.graph.n() {
        if let Some(l) = b.labels[v] {
            if let Some(u) = a.vertex_with_label(l) {
                map[v] = u;
                continue;
            }
        }
        map[v] = g.add_vertex();
        labels.push(b.labels[v]);
    }
    for (u, v) in b.graph.edges() {
        g.add_edge(map[u], map[v]);
    }
    BoundariedGraph { graph: g, labels }
}

pub fn restrict(a: &BoundariedGraph, keep: &[u32]) -> BoundariedGraph {
    let labels = a.labels.iter().map(|l| l.filter(|x| keep.contains(x))).collect();
    BoundariedGraph { graph: a.graph.clone(), labels }
}

/// Order-preserving relabel of a consecutive boundaried graph onto `target`.
pub fn relabel(a: &BoundariedGraph, target: &[u32]) -> Result<BoundariedGraph> {
    if !a.is_consecutive() {
        return input("relabel needs consecutive labels");
    }
    let mut t: Vec<u32> = target.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.len() != a.boundary_size() || t.contains(&0) {
        return input("relabel target size differs from boundary size");
    }
    let labels = a.labels.iter().map(|l| l.map(|x| t[x as usize - 1])).collect();
    Ok(BoundariedGraph { graph: a.graph.clone(), labels })
}

/// Index-aligned boundary-induced subgraphs coincide.
pub fn boundary_isomorphic(a: &BoundariedGraph, b: &BoundariedGraph) -> bool {
    let (ba, bb) = (a.boundary(), b.boundary());
    if ba.len() != bb.len() {
        return false;
    }
    (0..ba.len()).all(|i| (i + 1..ba.len()).all(|j| a.graph.has_edge(ba[i], ba[j]) == b.graph.has_edge(bb[i], bb[j])))
}

pub const DEFAULT_UNIVERSE_LIMIT: usize = 6;

/// All boundaried graphs with label set inside {1..t}, at most r
/// non-boundary vertices, and F-tm-free underlying graph, up to isomorphism.
pub fn enumerate_universe(family: &[Graph], t: usize, r: usize, limit: usize) -> Result<Vec<BoundariedGraph>> {
    if t + r > limit {
        return capability(format!("universe with t + r = {} exceeds {limit}", t + r));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for lmask in 0u32..1 << t {
        let labs: Vec<u32> = (0..t as u32).filter(|i| lmask >> i & 1 == 1).map(|i| i + 1).collect();
        for k in 0..=r {
            let n = labs.len() + k;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for emask in 0u64..1 << pairs.len() {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| emask >> i & 1 == 1).map(|(_, e)| *e).collect();
                let g = Graph::from_edges(n, &edges)?;
                let labels = (0..n).map(|v| labs.get(v).copied()).collect();
                let b = BoundariedGraph { graph: g, labels };
                let key = b.canonical_key();
                if seen.contains(&key) {
                    continue;
                }
                if family.is_empty() || !contains_family_tm(family, &b.graph)? {
                    out.push(b.canonical());
                }
                seen.insert(key);
            }
        }
    }
    out.sort_by_key(BoundariedGraph::canonical_key);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folio {
    /// Canonical members, sorted by key.
    pub members: Vec<BoundariedGraph>,
    pub family_hit: bool,
}

impl Folio {
    pub fn keys(&self) -> BTreeSet<CanonCode> {
        self.members.iter().map(BoundariedGraph::canonical_key).collect()
    }
}

/// Members of the universe (over labels up to the largest label of `b`)
/// that are rooted topological minors of `b`.
pub fn folio(b: &BoundariedGraph, family: &[Graph], r: usize, limit: usize) -> Result<Folio> {
    let t = b.label_set().last().copied().unwrap_or(0) as usize;
    let universe = enumerate_universe(family, t, r, limit)?;
    let members = universe.into_iter().filter(|m| is_rooted_topological_minor(m, b)).collect();
    Ok(Folio { members, family_hit: contains_family_tm(family, &b.graph)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn bg(g: Graph, labels: &[Option<u32>]) -> BoundariedGraph {
        BoundariedGraph::new(g, labels.to_vec()).unwrap()
    }

    #[test]
    fn glue_examples() {
        let e = bg(Graph::path(2), &[Some(1), Some(2)]);
        assert_eq!(glue(&e, &e).unwrap(), Graph::path(2));
        let p = bg(Graph::path(3), &[Some(1), None, Some(2)]);
        assert!(is_isomorphic(&glue(&p, &p).unwrap(), &Graph::cycle(4)));
        let a = BoundariedGraph::plain(Graph::complete(3));
        let g = glue(&a, &BoundariedGraph::plain(Graph::path(2))).unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert!(glue(&e, &a).is_err());
    }

    #[test]
    fn glue_uses_indices_not_labels() {
        let a = bg(Graph::path(2), &[Some(3), Some(7)]);
        let b = bg(Graph::path(3), &[Some(1), None, Some(2)]);
        assert!(is_isomorphic(&glue(&a, &b).unwrap(), &Graph::cycle(3)));
    }

    #[test]
    fn merge_examples() {
        let a = bg(Graph::new(2), &[Some(1), Some(2)]);
        let b = bg(Graph::new(2), &[Some(2), Some(3)]);
        let m = merge(&a, &b);
        assert_eq!(m.label_set(), vec![1, 2, 3]);
        assert_eq!(m.graph.n(), 3);
        assert_eq!(merge(&a, &BoundariedGraph::empty()), a);
        let e = bg(Graph::path(2), &[Some(1), Some(2)]);
        assert_eq!(merge(&e, &e), e);
    }

    #[test]
    fn restrict_and_relabel() {
        let a = bg(Graph::path(3), &[Some(1), Some(2), Some(3)]);
        assert_eq!(restrict(&a, &[2]).boundary_size(), 1);
        assert_eq!(restrict(&a, &a.label_set()), a);
        assert_eq!(restrict(&a, &[]).boundary_size(), 0);
        assert_eq!(restrict(&restrict(&a, &[1, 2]), &[2, 3]), restrict(&a, &[2]));
        let e = bg(Graph::path(2), &[Some(1), Some(2)]);
        let r = relabel(&e, &[9, 5]).unwrap();
        assert_eq!(r.labels, vec![Some(5), Some(9)]);
        assert_eq!(relabel(&e, &[1, 2]).unwrap(), e);
        assert_eq!(restrict(&r, &[]).graph, e.graph);
        assert!(relabel(&e, &[1]).is_err());
    }

    #[test]
    fn boundary_isomorphism() {
        let a = bg(Graph::new(3), &[Some(1), Some(2), Some(3)]);
        let b = bg(Graph::new(3), &[Some(4), Some(5), Some(6)]);
        assert!(boundary_isomorphic(&a, &b));
        let tri = bg(Graph::complete(3), &[Some(1), Some(2), Some(3)]);
        let path = bg(Graph::path(3), &[Some(1), Some(2), Some(3)]);
        assert!(!boundary_isomorphic(&tri, &path));
        assert!(boundary_isomorphic(&tri, &tri));
    }

    #[test]
    fn universe_counts() {
        let u = enumerate_universe(&[Graph::path(3)], 1, 0, 6).unwrap();
        assert_eq!(u.len(), 2);
        let u = enumerate_universe(&[Graph::path(2)], 2, 1, 6).unwrap();
        assert!(u.iter().all(|b| b.graph.m() == 0));
        // label subsets {}, {1}, {2}, {1,2}, with the edge option on {1,2}
        let u = enumerate_universe(&[Graph::cycle(4)], 2, 0, 6).unwrap();
        assert_eq!(u.len(), 5);
        assert!(enumerate_universe(&[Graph::cycle(4)], 4, 3, 6).is_err());
    }

    #[test]
    fn folio_examples() {
        let f = folio(&BoundariedGraph::empty(), &[Graph::cycle(4)], 1, 6).unwrap();
        assert_eq!(f.members.len(), 1);
        assert!(!f.family_hit);
        let e = bg(Graph::path(2), &[Some(1), Some(2)]);
        let f = folio(&e, &[Graph::cycle(4)], 0, 6).unwrap();
        assert_eq!(f.members.len(), 5);
        assert!(!f.family_hit);
        let c = BoundariedGraph::plain(Graph::cycle(4));
        assert!(folio(&c, &[Graph::cycle(4)], 0, 6).unwrap().family_hit);
    }

    #[test]
    fn glue_commutes_up_to_isomorphism() {
        let a = bg(Graph::path(4), &[Some(1), None, Some(2), None]);
        let b = bg(Graph::star(3), &[None, Some(2), Some(1), None]);
        assert!(is_isomorphic(&glue(&a, &b).unwrap(), &glue(&b, &a).unwrap()));
    }
}
