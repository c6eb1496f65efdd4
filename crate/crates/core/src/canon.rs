//! Canonical labelling for small (optionally vertex-coloured) graphs:
//! colour refinement plus individualisation, twins pruned.

use crate::graph::Graph;
use std::collections::HashSet;

/// Canonical code: colours and upper-triangle adjacency in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode {
    pub n: usize,
    pub colors: Vec<u32>,
    pub bits: Vec<u64>,
}

pub const MAX_CANON_N: usize = 24;

fn rank_by<K: Ord + Clone>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let ranks = keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect();
    (ranks, sorted.len())
}

fn refine(g: &Graph, col: &mut Vec<u32>) {
    let mut cells = {
        let mut c = col.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&u| col[u]).collect();
                nb.sort_unstable();
                (col[v], nb)
            })
            .collect();
        let (ranks, k) = rank_by(&sigs);
        *col = ranks;
        if k == cells {
            return;
        }
        cells = k;
    }
}

fn code_for(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64).max(1)];
    for (u, v) in g.edges() {
        let (i, j) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
        // row-major index of (i, j) in the strict upper triangle
        let k = i * (2 * n - i - 1) / 2 + (j - i - 1);
        bits[k / 64] |= 1 << (k % 64);
    }
    bits
}

fn are_twins(g: &Graph, u: usize, w: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&x| x != w);
    let b = g.neighbors(w).iter().filter(|&&x| x != u);
    a.eq(b)
}

fn search(g: &Graph, mut col: Vec<u32>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut col);
    let n = g.n();
    let mut count = vec![0usize; n];
    for &c in &col {
        count[c as usize] += 1;
    }
    let target = (0..n).find(|&c| count[c] > 1);
    match target {
        None => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| col[v]);
            let bits = code_for(g, &order);
            if best.as_ref().map_or(true, |(b, _)| bits < *b) {
                *best = Some((bits, order));
            }
        }
        Some(c) => {
            let cell: Vec<usize> = (0..n).filter(|&v| col[v] as usize == c).collect();
            let mut reps: Vec<usize> = Vec::new();
            for &v in &cell {
                if !reps.iter().any(|&r| are_twins(g, r, v)) {
                    reps.push(v);
                }
            }
            for v in reps {
                let next: Vec<u32> = (0..n)
                    .map(|u| 2 * col[u] + u32::from(col[u] as usize == c && u != v))
                    .collect();
                search(g, next, best);
            }
        }
    }
}

/// Canonical code and a canonical order (position -> vertex). Vertices with
/// smaller colour come first; colours are part of the code.
pub fn canonical_form(g: &Graph, colors: &[u32]) -> (CanonCode, Vec<usize>) {
    assert!(g.n() <= MAX_CANON_N, "canonical form limited to {MAX_CANON_N} vertices");
    assert_eq!(colors.len(), g.n());
    let (ranks, _) = rank_by(colors);
    let mut best = None;
    search(g, ranks, &mut best);
    let (bits, order) = best.unwrap_or((vec![0], Vec::new()));
    let colors = order.iter().map(|&v| colors[v]).collect();
    (CanonCode { n: g.n(), colors, bits }, order)
}

pub fn canonical_code(g: &Graph) -> CanonCode {
    canonical_form(g, &vec![0; g.n()]).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_code(a) == canonical_code(b)
}

/// Rebuilds the graph in canonical vertex order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g, &vec![0; g.n()]);
    relabel(g, &order)
}

/// Graph whose vertex i is `order[i]` of `g`.
pub fn relabel(g: &Graph, order: &[usize]) -> Graph {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut h = Graph::new(g.n());
    for (u, v) in g.edges() {
        h.add_edge(pos[u], pos[v]);
    }
    h
}

/// All graphs on exactly `n` vertices up to isomorphism, built by vertex
/// extension and deduplicated by canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::new(0)];
    for k in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u64..1 << k {
                let mut h = g.clone();
                let v = h.add_vertex();
                for u in 0..k {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, v);
                    }
                }
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}
