//! Tree decompositions (validation, min-fill heuristic), nice tree
//! decompositions with edge attribution, and branch decompositions.

use crate::error::{input, Result};
use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted bags.
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// Max bag size minus one; -1 for no bags.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    /// Same tree with `v` added to every bag.
    pub fn with_vertex_everywhere(&self, v: usize) -> TreeDecomposition {
        if self.bags.is_empty() {
            return TreeDecomposition::new(vec![vec![v]], Vec::new());
        }
        let bags = self.bags.iter().map(|b| b.iter().copied().chain([v]).collect()).collect();
        TreeDecomposition::new(bags, self.edges.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    BadVertex { bag: usize, vertex: usize },
    NotATree,
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    Disconnected(usize),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::BadVertex { bag, vertex } => write!(f, "bag {bag} holds unknown vertex {vertex}"),
            TdViolation::NotATree => write!(f, "decomposition tree is not a tree"),
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} in no bag"),
            TdViolation::EdgeUncovered(u, v) => write!(f, "edge {{{u},{v}}} in no bag"),
            TdViolation::Disconnected(v) => write!(f, "bags containing {v} are not connected"),
        }
    }
}

fn is_tree(k: usize, edges: &[(usize, usize)]) -> bool {
    if k == 0 {
        return edges.is_empty();
    }
    if edges.len() != k - 1 || edges.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
        return false;
    }
    let mut dsu: Vec<usize> = (0..k).collect();
    fn find(d: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while d[r] != r {
            r = d[r];
        }
        let mut y = x;
        while d[y] != r {
            let next = d[y];
            d[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra == rb {
            return false;
        }
        dsu[ra] = rb;
    }
    true
}

/// Checks the three axioms; the error names the first violation found.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), TdViolation> {
    let k = td.bags.len();
    for (i, b) in td.bags.iter().enumerate() {
        if let Some(&v) = b.iter().find(|&&v| v >= g.n()) {
            return Err(TdViolation::BadVertex { bag: i, vertex: v });
        }
    }
    if !(k == 0 && g.n() == 0) && !is_tree(k, &td.edges) {
        return Err(TdViolation::NotATree);
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, b) in td.bags.iter().enumerate() {
        for &v in b {
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Err(TdViolation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|i| td.bags[*i].binary_search(&v).is_ok()) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut mark = vec![usize::MAX; k];
    for v in 0..g.n() {
        let start = holders[v][0];
        let mut stack = vec![start];
        mark[start] = v;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if mark[y] != v && td.bags[y].binary_search(&v).is_ok() {
                    mark[y] = v;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached != holders[v].len() {
            return Err(TdViolation::Disconnected(v));
        }
    }
    Ok(())
}

/// Elimination-order decomposition: repeatedly eliminate the vertex adding the
/// fewest fill edges (ties to the lowest id).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::default();
    }
    let mut nb: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX);
        for v in (0..n).filter(|&v| alive[v]) {
            let list: Vec<usize> = nb[v].iter().copied().collect();
            let mut fill = 0;
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    if !nb[list[i]].contains(&list[j]) {
                        fill += 1;
                    }
                }
            }
            if fill < best.0 {
                best = (fill, v);
            }
        }
        let v = best.1;
        let list: Vec<usize> = nb[v].iter().copied().collect();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                nb[list[i]].insert(list[j]);
                nb[list[j]].insert(list[i]);
            }
        }
        for &u in &list {
            nb[u].remove(&v);
        }
        alive[v] = false;
        let mut bag = list;
        bag.push(v);
        bags.push(bag);
        order.push(v);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // bag i links to the bag of its earliest-eliminated remaining neighbour
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        match bag.iter().filter(|&&u| u != v).map(|&u| pos[u]).min() {
            Some(j) => edges.push((i, j)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<usize>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
    /// On introduce(v): neighbours u with edge {u, v} charged to this node.
    pub charged: Vec<usize>,
}

/// Nodes are stored children-first; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> isize {
        self.nodes.iter().map(|n| n.bag.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn max_bag(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    /// Plain tree decomposition over the same bags.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let mut edges = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition::new(bags, edges)
    }

    /// Structural check of the nice-form rules and the edge attribution.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let root = self.root();
        if !self.nodes[root].bag.is_empty() {
            return Err("root bag not empty".into());
        }
        let mut charged = 0;
        for (i, n) in self.nodes.iter().enumerate() {
            if n.children.iter().any(|&c| c >= i) {
                return Err(format!("node {i} has a child stored after it"));
            }
            let child = |k: usize| &self.nodes[n.children[k]].bag;
            let ok = match n.kind {
                NodeKind::Leaf => n.children.is_empty() && n.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    n.children.len() == 1 && !child(0).contains(&v) && {
                        let mut b = child(0).clone();
                        b.push(v);
                        b.sort_unstable();
                        b == n.bag
                    }
                }
                NodeKind::Forget(v) => {
                    n.children.len() == 1 && n.bag.binary_search(&v).is_err() && {
                        let mut b = n.bag.clone();
                        b.push(v);
                        b.sort_unstable();
                        b == *child(0)
                    }
                }
                NodeKind::Join => n.children.len() == 2 && *child(0) == n.bag && *child(1) == n.bag,
            };
            if !ok {
                return Err(format!("node {i} violates its kind"));
            }
            if let NodeKind::Introduce(v) = n.kind {
                for &u in &n.charged {
                    if !g.has_edge(u, v) || n.bag.binary_search(&u).is_err() {
                        return Err(format!("bad charged edge at node {i}"));
                    }
                }
                charged += n.charged.len();
            } else if !n.charged.is_empty() {
                return Err(format!("charged edges on non-introduce node {i}"));
            }
        }
        if charged != g.m() {
            return Err(format!("{charged} charged edges, graph has {}", g.m()));
        }
        validate_td(g, &self.to_td()).map_err(|e| e.to_string())
    }
}

/// Converts a valid decomposition into nice form, charging each edge to one
/// introduce node.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition> {
    build_nice(td, g, None)
}

/// Nice form in which `anchor` (present in every non-empty bag) is introduced
/// directly above each leaf and forgotten last.
pub fn make_nice_anchored(td: &TreeDecomposition, g: &Graph, anchor: usize) -> Result<NiceTreeDecomposition> {
    if td.bags.iter().any(|b| b.binary_search(&anchor).is_err()) {
        return input(format!("vertex {anchor} missing from some bag"));
    }
    build_nice(td, g, Some(anchor))
}

/// Nice decomposition from the min-fill heuristic.
pub fn heuristic_nice(g: &Graph) -> NiceTreeDecomposition {
    make_nice(&heuristic_td(g), g).expect("heuristic decomposition is valid")
}

fn build_nice(td: &TreeDecomposition, g: &Graph, anchor: Option<usize>) -> Result<NiceTreeDecomposition> {
    if let Err(e) = validate_td(g, td) {
        return input(format!("invalid tree decomposition: {e}"));
    }
    let mut nodes: Vec<NiceNode> = Vec::new();
    let push = |nodes: &mut Vec<NiceNode>, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>| {
        nodes.push(NiceNode { bag, kind, children, charged: Vec::new() });
        nodes.len() - 1
    };
    let intro_key = |v: &usize| (Some(*v) != anchor, *v);
    let forget_key = |v: &usize| (Some(*v) == anchor, *v);

    // walk from `top` (bag `from`) up to bag `to`
    let chain = |nodes: &mut Vec<NiceNode>, mut top: usize, to: &[usize]| {
        let mut cur = nodes[top].bag.clone();
        let mut gone: Vec<usize> = cur.iter().copied().filter(|v| to.binary_search(v).is_err()).collect();
        gone.sort_by_key(forget_key);
        for v in gone {
            cur.retain(|&x| x != v);
            top = push(nodes, cur.clone(), NodeKind::Forget(v), vec![top]);
        }
        let mut new: Vec<usize> = to.iter().copied().filter(|v| cur.binary_search(v).is_err()).collect();
        new.sort_by_key(intro_key);
        for v in new {
            let i = cur.binary_search(&v).unwrap_err();
            cur.insert(i, v);
            top = push(nodes, cur.clone(), NodeKind::Introduce(v), vec![top]);
        }
        top
    };

    if td.bags.is_empty() {
        push(&mut nodes, Vec::new(), NodeKind::Leaf, Vec::new());
        return Ok(NiceTreeDecomposition { nodes });
    }
    let k = td.bags.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(x) = q.pop_front() {
        let mut ch: Vec<usize> = adj[x].iter().copied().filter(|&y| !seen[y]).collect();
        ch.sort_unstable();
        for y in ch {
            seen[y] = true;
            parent[y] = x;
            order.push(y);
            q.push_back(y);
        }
    }
    let mut top_of = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut kids: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x).collect();
        kids.sort_unstable();
        let mut tops: Vec<usize> = Vec::new();
        for c in kids {
            let t = chain(&mut nodes, top_of[c], bag);
            tops.push(t);
        }
        if tops.is_empty() {
            let leaf = push(&mut nodes, Vec::new(), NodeKind::Leaf, Vec::new());
            tops.push(chain(&mut nodes, leaf, bag));
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = push(&mut nodes, bag.clone(), NodeKind::Join, vec![acc, t]);
        }
        top_of[x] = acc;
    }
    chain(&mut nodes, top_of[0], &[]);
    attribute_edges(&mut nodes, g);
    Ok(NiceTreeDecomposition { nodes })
}

fn attribute_edges(nodes: &mut [NiceNode], g: &Graph) {
    let r = nodes.len() - 1;
    let mut depth = vec![0usize; nodes.len()];
    for i in (0..nodes.len()).rev() {
        for c in nodes[i].children.clone() {
            depth[c] = depth[i] + 1;
        }
    }
    let mut below_forget = vec![usize::MAX; g.n()];
    for i in 0..=r {
        if let NodeKind::Forget(v) = nodes[i].kind {
            below_forget[v] = nodes[i].children[0];
        }
    }
    for (u, v) in g.edges() {
        let (a, b) = (below_forget[u], below_forget[v]);
        let mut t = if depth[a] >= depth[b] { a } else { b };
        loop {
            match nodes[t].kind {
                NodeKind::Introduce(x) if x == u || x == v => {
                    let other = if x == u { v } else { u };
                    nodes[t].charged.push(other);
                    break;
                }
                NodeKind::Leaf => unreachable!("edge {u}-{v} never introduced"),
                _ => t = nodes[t].children[0],
            }
        }
    }
    for n in nodes.iter_mut() {
        n.charged.sort_unstable();
    }
}

/// Rooted binary tree whose leaves are graph edges; node i's mid set is the
/// boundary between the edges below i and the rest. The root (last node)
/// has an empty mid set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub nodes: Vec<BdNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdNode {
    pub children: Vec<usize>,
    pub edge: Option<(usize, usize)>,
    pub mid: Vec<usize>,
}

impl BranchDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.mid.len()).max().unwrap_or(0)
    }

    /// Checks leaves against the edge set, arity, and stored mid sets.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut leaves: Vec<(usize, usize)> = self.nodes.iter().filter_map(|n| n.edge).collect();
        leaves.sort_unstable();
        if leaves != g.edges() {
            return Err("leaves do not biject with edges".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            let ok = match n.edge {
                Some(_) => n.children.is_empty(),
                None => n.children.len() == 2 && n.children.iter().all(|&c| c < i),
            };
            if !ok {
                return Err(format!("node {i} has wrong arity"));
            }
        }
        if mid_sets(self, g) != self.nodes.iter().map(|n| n.mid.clone()).collect::<Vec<_>>() {
            return Err("stored mid sets differ from recomputation".into());
        }
        Ok(())
    }
}

/// Recomputes mid sets: vertices with some but not all incident edges below.
pub fn mid_sets(bd: &BranchDecomposition, g: &Graph) -> Vec<Vec<usize>> {
    let mut inside: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(bd.nodes.len());
    let mut out = Vec::with_capacity(bd.nodes.len());
    for n in &bd.nodes {
        let mut cnt = BTreeMap::new();
        if let Some((u, v)) = n.edge {
            cnt.insert(u, 1);
            cnt.insert(v, 1);
        }
        for &c in &n.children {
            for (&v, &k) in &inside[c] {
                *cnt.entry(v).or_insert(0) += k;
            }
        }
        out.push(cnt.iter().filter(|(&v, &k)| k < g.degree(v)).map(|(&v, _)| v).collect());
        inside.push(cnt);
    }
    out
}

/// Branch decomposition from a tree decomposition; `None` for edgeless graphs.
pub fn td_to_branch(td: &TreeDecomposition, g: &Graph) -> Result<Option<BranchDecomposition>> {
    if g.m() == 0 {
        return Ok(None);
    }
    let nice = make_nice(td, g)?;
    let width = td.width().max(0) as usize;
    // general tree: nice nodes plus one leaf per edge under its introduce node
    let k = nice.nodes.len();
    let mut kids: Vec<Vec<usize>> = nice.nodes.iter().map(|n| n.children.clone()).collect();
    let mut edge_of: Vec<Option<(usize, usize)>> = vec![None; k];
    for (i, n) in nice.nodes.iter().enumerate() {
        if let NodeKind::Introduce(v) = n.kind {
            for &u in &n.charged {
                edge_of.push(Some((u.min(v), u.max(v))));
                kids.push(Vec::new());
                let leaf = kids.len() - 1;
                kids[i].push(leaf);
            }
        }
    }
    // nice nodes are stored children-first, so one forward pass collapses
    // the tree into binary nodes; rep[x] is x's representative, if any
    let mut nodes: Vec<BdNode> = Vec::new();
    let mut rep: Vec<Option<usize>> = vec![None; k];
    for x in 0..k {
        let mut acc: Option<usize> = None;
        for &c in &kids[x] {
            let part = if c >= k {
                nodes.push(BdNode { children: Vec::new(), edge: edge_of[c], mid: Vec::new() });
                Some(nodes.len() - 1)
            } else {
                rep[c]
            };
            if let Some(p) = part {
                acc = Some(match acc {
                    None => p,
                    Some(a) => {
                        nodes.push(BdNode { children: vec![a, p], edge: None, mid: Vec::new() });
                        nodes.len() - 1
                    }
                });
            }
        }
        rep[x] = acc;
    }
    let top = rep[nice.root()];
    let top = top.expect("graph has edges");
    // the collapsed tree's root is the last pushed node
    debug_assert_eq!(top, nodes.len() - 1);
    let mut bd = BranchDecomposition { nodes };
    let mids = mid_sets(&bd, g);
    for (n, m) in bd.nodes.iter_mut().zip(mids) {
        assert!(m.len() <= width + 2, "mid set of size {} exceeds width + 2", m.len());
        n.mid = m;
    }
    Ok(Some(bd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Exact treewidth by dynamic programming over elimination prefixes.
    fn exact_treewidth(g: &Graph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        let adj = g.adj_masks();
        // q(S, v): vertices outside S ∪ {v} reachable from v through S
        let q = |s: u64, v: usize| -> usize {
            let mut seen = 1u64 << v;
            let mut frontier = 1u64 << v;
            let mut out = 0u64;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = adj[x] & !seen;
                seen |= nb;
                out |= nb & !s;
                frontier |= nb & s;
            }
            out.count_ones() as usize
        };
        let full = (1u64 << n) - 1;
        let mut tw = vec![usize::MAX; 1 << n];
        tw[0] = 0;
        for s in 1..=full {
            let mut best = usize::MAX;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let prev = s & !(1 << v);
                best = best.min(tw[prev as usize].max(q(prev, v)));
            }
            tw[s as usize] = best;
        }
        tw[full as usize]
    }

    #[test]
    fn validate_examples() {
        let k3 = Graph::complete(3);
        assert!(validate_td(&k3, &TreeDecomposition::new(vec![vec![0, 1, 2]], vec![])).is_ok());
        let bad = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(validate_td(&k3, &bad), Err(TdViolation::EdgeUncovered(0, 2)));
        let p4 = Graph::path(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        assert!(validate_td(&p4, &td).is_ok());
        assert_eq!(td.width(), 1);
        let split = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert_eq!(validate_td(&p4, &split), Err(TdViolation::Disconnected(1)));
        assert!(validate_td(&Graph::new(0), &TreeDecomposition::default()).is_ok());
    }

    #[test]
    fn heuristic_examples() {
        let mut tree = Graph::star(4);
        let v = tree.add_vertex();
        tree.add_edge(1, v);
        assert_eq!(heuristic_td(&tree).width(), 1);
        assert_eq!(heuristic_td(&Graph::complete(5)).width(), 4);
        assert_eq!(heuristic_td(&Graph::cycle(4)).width(), 2);
    }

    #[test]
    fn heuristic_is_valid_and_bounded_below_by_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..150 {
            let n = rng.gen_range(0..=12);
            let p = rng.gen_range(0.1..0.7);
            let g = random_graph(&mut rng, n, p);
            let td = heuristic_td(&g);
            assert!(validate_td(&g, &td).is_ok());
            if n > 0 {
                assert!(td.width() as usize >= exact_treewidth(&g));
            }
        }
    }

    #[test]
    fn nice_examples() {
        let k3 = Graph::complete(3);
        let nice = make_nice(&TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]), &k3).unwrap();
        let kinds: Vec<NodeKind> = nice.nodes.iter().map(|n| n.kind.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf,
                NodeKind::Introduce(0),
                NodeKind::Introduce(1),
                NodeKind::Introduce(2),
                NodeKind::Forget(0),
                NodeKind::Forget(1),
                NodeKind::Forget(2),
            ]
        );
        nice.check(&k3).unwrap();

        let empty = make_nice(&TreeDecomposition::default(), &Graph::new(0)).unwrap();
        assert_eq!(empty.nodes.len(), 1);

        let p4 = Graph::path(4);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)]);
        let nice = make_nice(&td, &p4).unwrap();
        nice.check(&p4).unwrap();
        assert_eq!(nice.width(), 1);
        assert!(nice.nodes.iter().all(|n| n.kind != NodeKind::Join));

        let bad = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(make_nice(&bad, &k3).is_err());
    }

    #[test]
    fn nice_random_preserves_width_and_charges_every_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.gen_range(1..=25);
            let p = rng.gen_range(0.05..0.5);
            let g = random_graph(&mut rng, n, p);
            let td = heuristic_td(&g);
            let nice = make_nice(&td, &g).unwrap();
            nice.check(&g).unwrap();
            assert_eq!(nice.width(), td.width());
            assert!(nice.nodes.len() <= 4 * (td.width() as usize + 2) * n + 4);
        }
    }

    #[test]
    fn anchored_introduces_anchor_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(0..=12);
            let g = random_graph(&mut rng, n, 0.3);
            let mut g0 = g.clone();
            let v0 = g0.add_vertex();
            for v in 0..n {
                g0.add_edge(v, v0);
            }
            let td0 = heuristic_td(&g).with_vertex_everywhere(v0);
            let nice = make_nice_anchored(&td0, &g0, v0).unwrap();
            nice.check(&g0).unwrap();
            for node in &nice.nodes {
                if !node.bag.is_empty() {
                    assert!(node.bag.contains(&v0));
                }
                if node.kind == NodeKind::Introduce(v0) {
                    assert_eq!(nice.nodes[node.children[0]].kind, NodeKind::Leaf);
                }
            }
        }
    }

    #[test]
    fn branch_examples() {
        let e = Graph::path(2);
        let bd = td_to_branch(&heuristic_td(&e), &e).unwrap().unwrap();
        bd.check(&e).unwrap();
        assert_eq!(bd.nodes.len(), 1);
        assert!(bd.width() <= 2);

        let k3 = Graph::complete(3);
        let bd = td_to_branch(&heuristic_td(&k3), &k3).unwrap().unwrap();
        bd.check(&k3).unwrap();
        assert!(bd.width() <= 3);

        let star = Graph::star(3);
        let bd = td_to_branch(&heuristic_td(&star), &star).unwrap().unwrap();
        bd.check(&star).unwrap();
        assert!(bd.width() <= 2);
        assert!(bd.nodes.iter().all(|n| n.edge.is_some() || n.mid.contains(&0) || n.mid.is_empty()));

        assert!(td_to_branch(&heuristic_td(&Graph::new(3)), &Graph::new(3)).unwrap().is_none());
    }

    #[test]
    fn branch_random_mid_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(2..=20);
            let g = random_graph(&mut rng, n, 0.3);
            let td = heuristic_td(&g);
            if let Some(bd) = td_to_branch(&td, &g).unwrap() {
                bd.check(&g).unwrap();
                assert!(bd.width() <= td.width() as usize + 2);
                assert!(bd.nodes[bd.root()].mid.is_empty());
            }
        }
    }
}
