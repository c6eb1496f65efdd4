//! {C4}-TM-Deletion by rank-based dynamic programming over the graph G0
//! obtained by adding a universal vertex v0.
//!
//! Table key: alive mask over bag positions, mask of chosen v0-edges, triangle
//! flags on alive bag edges, and b = |Z| - |E| + c3 of the partial solution
//! graph. Weights count deleted vertices. A partial solution graph is
//! C4-tm-free iff it is diamond-free with b equal to its number of components,
//! and every component meets the bag, so only partitions with exactly b
//! blocks are kept.

use crate::decomp::{heuristic_td, make_nice_anchored, validate_td, NiceTreeDecomposition, NodeKind, TreeDecomposition};
use crate::error::{capability, input, width_cap, Result};
use crate::graph::Graph;
use crate::wpart::{Partition, WeightedPartitionSet};
use crate::{Solved, Weight};
use std::collections::{BTreeMap, HashMap};

pub const C4_MAX_WIDTH: usize = 10;

type Wps = WeightedPartitionSet<Weight>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key {
    s: u32,
    s0: u32,
    r: u128,
    b: i32,
}

#[derive(Clone, Copy, Debug)]
pub struct C4Options {
    pub reduce: bool,
}

impl Default for C4Options {
    fn default() -> Self {
        C4Options { reduce: true }
    }
}

/// G plus one vertex adjacent to everything; the new vertex is `g.n()`.
pub fn augment(g: &Graph) -> Graph {
    let n = g.n();
    let mut h = g.clone();
    h.add_vertex();
    for v in 0..n {
        h.add_edge(v, n);
    }
    h
}

fn pair(i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j * (j - 1) / 2 + i) as u32
}

fn bit(x: u32, i: usize) -> bool {
    x >> i & 1 == 1
}

/// Re-indexes a mask through a position map.
fn remap_mask(x: u32, map: &[Option<usize>]) -> u32 {
    let mut out = 0;
    for (i, m) in map.iter().enumerate() {
        if let (true, Some(j)) = (bit(x, i), m) {
            out |= 1 << j;
        }
    }
    out
}

fn remap_pairs(r: u128, map: &[Option<usize>]) -> u128 {
    let mut out = 0;
    for j in 1..map.len() {
        for i in 0..j {
            if r >> pair(i, j) & 1 == 1 {
                if let (Some(a), Some(b)) = (map[i], map[j]) {
                    out |= 1 << pair(a, b);
                }
            }
        }
    }
    out
}

/// The partial solution graph restricted to the bag.
struct BagGraph {
    adj: Vec<u32>,
}

impl BagGraph {
    fn new(g0: &Graph, bag: &[usize], v0: usize, s: u32, s0: u32) -> Self {
        let k = bag.len();
        let mut adj = vec![0u32; k];
        for j in 0..k {
            for i in 0..j {
                if !bit(s, i) || !bit(s, j) {
                    continue;
                }
                let e = if bag[j] == v0 {
                    bit(s0, i)
                } else if bag[i] == v0 {
                    bit(s0, j)
                } else {
                    g0.has_edge(bag[i], bag[j])
                };
                if e {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        BagGraph { adj }
    }

    fn edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Triangle count and the mask of edges lying on a triangle.
    fn triangles(&self) -> (usize, u128) {
        let k = self.adj.len();
        let mut c = 0;
        let mut on = 0u128;
        for a in 0..k {
            for b in a + 1..k {
                if !bit(self.adj[a], b) {
                    continue;
                }
                let common = self.adj[a] & self.adj[b] & !((1u32 << (b + 1)) - 1);
                let mut m = common;
                while m != 0 {
                    let x = m.trailing_zeros() as usize;
                    m &= m - 1;
                    c += 1;
                    on |= 1 << pair(a, b) | 1 << pair(a, x) | 1 << pair(b, x);
                }
            }
        }
        (c, on)
    }
}

struct Dp<'a> {
    g0: &'a Graph,
    ntd: &'a NiceTreeDecomposition,
    v0: usize,
    dead: &'a [bool],
    opts: C4Options,
}

fn finish(universe: &[usize], entries: Vec<(Partition, Weight)>, b: Option<i32>, reduce: bool) -> Result<Option<Wps>> {
    let mut set = Wps::from_entries(universe, entries)?;
    if let Some(b) = b {
        set.retain(|p, _| p.num_blocks() as i32 == b);
    }
    if reduce {
        set = set.reduce()?;
    }
    Ok((!set.is_empty()).then_some(set))
}

impl<'a> Dp<'a> {
    fn alive_ids(&self, bag: &[usize], s: u32) -> Vec<usize> {
        bag.iter().enumerate().filter(|&(i, _)| bit(s, i)).map(|(_, &v)| v).collect()
    }

    fn store(&self, acc: BTreeMap<Key, Vec<(Partition, Weight)>>, bag: &[usize], filter: bool) -> Result<HashMap<Key, Wps>> {
        let mut t = HashMap::new();
        for (k, entries) in acc {
            let uni = self.alive_ids(bag, k.s);
            if let Some(set) = finish(&uni, entries, filter.then_some(k.b), self.opts.reduce)? {
                t.insert(k, set);
            }
        }
        Ok(t)
    }

    fn run(&self) -> Result<Option<Weight>> {
        let mut tables: Vec<HashMap<Key, Wps>> = Vec::with_capacity(self.ntd.nodes.len());
        for node in &self.ntd.nodes {
            let bag = &node.bag;
            let mut acc: BTreeMap<Key, Vec<(Partition, Weight)>> = BTreeMap::new();
            let mut filter = true;
            match node.kind {
                NodeKind::Leaf => {
                    let mut t = HashMap::new();
                    t.insert(Key { s: 0, s0: 0, r: 0, b: 0 }, Wps::from_entries(&[], vec![(Partition::singletons(0), 0)])?);
                    tables.push(t);
                    continue;
                }
                NodeKind::Introduce(v) if v == self.v0 => {
                    if !self.ntd.nodes[node.children[0]].bag.is_empty() {
                        return input("v0 must be introduced directly above a leaf");
                    }
                    acc.insert(Key { s: 1, s0: 0, r: 0, b: 1 }, vec![(Partition::whole(1), 0)]);
                }
                NodeKind::Introduce(v) => {
                    let p = bag.binary_search(&v).unwrap();
                    let map: Vec<Option<usize>> = (0..bag.len() - 1).map(|i| Some(if i < p { i } else { i + 1 })).collect();
                    let pv0 = bag.binary_search(&self.v0).map_err(|_| crate::Error::Input("bag without v0".into()))?;
                    for (ck, set) in &tables[node.children[0]] {
                        let s = remap_mask(ck.s, &map);
                        let s0 = remap_mask(ck.s0, &map);
                        let r = remap_pairs(ck.r, &map);
                        acc.entry(Key { s, s0, r, b: ck.b }).or_default().extend(set.entries().iter().cloned());
                        if self.dead[v] {
                            continue;
                        }
                        let s = s | 1 << p;
                        for take0 in [false, true] {
                            let s0 = if take0 { s0 | 1 << p } else { s0 };
                            let h = BagGraph::new(self.g0, bag, self.v0, s, s0);
                            let nb = h.adj[p];
                            // the neighbourhood must induce a matching of non-triangle edges
                            let mut r = r;
                            let mut d3 = 0;
                            let mut ok = true;
                            for a in 0..bag.len() {
                                if !bit(nb, a) {
                                    continue;
                                }
                                let inner = h.adj[a] & nb;
                                match inner.count_ones() {
                                    0 => {}
                                    1 => {
                                        let c = inner.trailing_zeros() as usize;
                                        if a < c {
                                            if r >> pair(a, c) & 1 == 1 {
                                                ok = false;
                                                break;
                                            }
                                            d3 += 1;
                                            r |= 1 << pair(a, c) | 1 << pair(a, p) | 1 << pair(c, p);
                                        }
                                    }
                                    _ => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            if !ok {
                                continue;
                            }
                            debug_assert!(bit(s, pv0));
                            let b = ck.b + 1 - nb.count_ones() as i32 + d3;
                            let mut glue: Vec<usize> = (0..bag.len()).filter(|&a| bit(nb, a)).map(|a| bag[a]).collect();
                            glue.push(v);
                            let next = set.ins(&[v])?.glue(&glue)?;
                            acc.entry(Key { s, s0, r, b }).or_default().extend(next.entries().iter().cloned());
                        }
                    }
                }
                NodeKind::Forget(v) => {
                    let cb = &self.ntd.nodes[node.children[0]].bag;
                    let p = cb.binary_search(&v).unwrap();
                    let map: Vec<Option<usize>> =
                        (0..cb.len()).map(|i| if i == p { None } else { Some(if i < p { i } else { i - 1 }) }).collect();
                    if v == self.v0 {
                        filter = false;
                    }
                    for (ck, set) in &tables[node.children[0]] {
                        let key = Key { s: remap_mask(ck.s, &map), s0: remap_mask(ck.s0, &map), r: remap_pairs(ck.r, &map), b: ck.b };
                        let next = if bit(ck.s, p) { set.proj(&[v])? } else { set.shft(1) };
                        acc.entry(key).or_default().extend(next.entries().iter().cloned());
                    }
                }
                NodeKind::Join => {
                    let (t1, t2) = (&tables[node.children[0]], &tables[node.children[1]]);
                    let mut by_mask: HashMap<(u32, u32), Vec<(&Key, &Wps)>> = HashMap::new();
                    for (k, set) in t2 {
                        by_mask.entry((k.s, k.s0)).or_default().push((k, set));
                    }
                    let mut shared: HashMap<(u32, u32), (i32, u128)> = HashMap::new();
                    for (k1, a) in t1 {
                        let Some(others) = by_mask.get(&(k1.s, k1.s0)) else { continue };
                        let &mut (bh, on) = shared.entry((k1.s, k1.s0)).or_insert_with(|| {
                            let h = BagGraph::new(self.g0, bag, self.v0, k1.s, k1.s0);
                            let (c3, on) = h.triangles();
                            (k1.s.count_ones() as i32 - h.edges() as i32 + c3 as i32, on)
                        });
                        for (k2, c) in others {
                            if k1.r & k2.r != on {
                                continue;
                            }
                            let key = Key { s: k1.s, s0: k1.s0, r: k1.r | k2.r, b: k1.b + k2.b - bh };
                            let next = a.join(c)?;
                            acc.entry(key).or_default().extend(next.entries().iter().cloned());
                        }
                    }
                }
            }
            tables.push(self.store(acc, bag, filter)?);
        }
        let root = &tables[self.ntd.root()];
        Ok(root.get(&Key { s: 0, s0: 0, r: 0, b: 1 }).and_then(|s| s.min_weight()))
    }
}

fn prepare(g: &Graph) -> Result<(Graph, NiceTreeDecomposition)> {
    prepare_td(g, &heuristic_td(g))
}

fn prepare_td(g: &Graph, td: &TreeDecomposition) -> Result<(Graph, NiceTreeDecomposition)> {
    if let Err(e) = validate_td(g, td) {
        return input(format!("invalid tree decomposition: {e}"));
    }
    let w = td.width().max(0) as usize;
    let cap = width_cap(C4_MAX_WIDTH);
    if w > cap {
        return capability(format!("C4 solver supports width <= {cap} (got {w})"));
    }
    let g0 = augment(g);
    let ntd = make_nice_anchored(&td.with_vertex_everywhere(g.n()), &g0, g.n())?;
    Ok((g0, ntd))
}

fn optimum_with(g: &Graph, g0: &Graph, ntd0: &NiceTreeDecomposition, dead: &[bool], opts: C4Options) -> Result<Option<Weight>> {
    let dp = Dp { g0, ntd: ntd0, v0: g.n(), dead, opts };
    dp.run()
}

fn check_ntd0(g: &Graph, g0: &Graph, ntd0: &NiceTreeDecomposition) -> Result<()> {
    if let Err(e) = ntd0.check(g0) {
        return input(format!("invalid nice tree decomposition of G0: {e}"));
    }
    if ntd0.nodes.iter().any(|n| !n.bag.is_empty() && n.bag.binary_search(&g.n()).is_err()) {
        return input("every non-empty bag must contain v0");
    }
    Ok(())
}

/// Minimum deletion value over a given decomposition of augment(g).
pub fn c4_optimum(g: &Graph, ntd0: &NiceTreeDecomposition, opts: C4Options) -> Result<usize> {
    let g0 = augment(g);
    check_ntd0(g, &g0, ntd0)?;
    let dead = vec![false; g.n()];
    Ok(optimum_with(g, &g0, ntd0, &dead, opts)?.expect("deleting everything is feasible") as usize)
}

/// True iff at most k deletions make g C4-tm-free.
pub fn decide_c4(g: &Graph, ntd0: &NiceTreeDecomposition, k: usize) -> Result<bool> {
    Ok(c4_optimum(g, ntd0, C4Options::default())? <= k)
}

pub fn solve_c4(g: &Graph) -> Result<Solved> {
    solve_c4_with(g, C4Options::default())
}

/// Optimum plus a witness found by probing vertices as forced deletions.
pub fn solve_c4_with(g: &Graph, opts: C4Options) -> Result<Solved> {
    let (g0, ntd0) = prepare(g)?;
    probe(g, &g0, &ntd0, opts)
}

/// As `solve_c4_with`, over a caller-supplied decomposition of g.
pub fn solve_c4_on(g: &Graph, td: &TreeDecomposition, opts: C4Options) -> Result<Solved> {
    let (g0, ntd0) = prepare_td(g, td)?;
    probe(g, &g0, &ntd0, opts)
}

fn probe(g: &Graph, g0: &Graph, ntd0: &NiceTreeDecomposition, opts: C4Options) -> Result<Solved> {
    let mut dead = vec![false; g.n()];
    let optimum = optimum_with(g, g0, ntd0, &dead, opts)?.expect("deleting everything is feasible");
    let mut solution = Vec::new();
    for v in 0..g.n() {
        if solution.len() == optimum as usize {
            break;
        }
        dead[v] = true;
        if optimum_with(g, g0, ntd0, &dead, opts)? == Some(optimum) {
            solution.push(v);
        } else {
            dead[v] = false;
        }
    }
    assert_eq!(solution.len(), optimum as usize, "probing must recover an optimum");
    Ok(Solved { optimum: optimum as usize, solution })
}
