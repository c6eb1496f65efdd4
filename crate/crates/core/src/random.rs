//! Random instance generators.

use crate::decomp::TreeDecomposition;
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// G(n, p).
pub fn erdos_renyi<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
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

/// Random partial k-tree on n vertices (edges kept with probability `keep`)
/// together with a tree decomposition of width at most k.
pub fn partial_ktree<R: Rng>(rng: &mut R, n: usize, k: usize, keep: f64) -> (Graph, TreeDecomposition) {
    let mut g = Graph::new(n);
    if n == 0 {
        return (g, TreeDecomposition::default());
    }
    let first = n.min(k + 1);
    let mut bags: Vec<Vec<usize>> = vec![(0..first).collect()];
    let mut edges = Vec::new();
    for u in 0..first {
        for v in u + 1..first {
            if rng.gen_bool(keep) {
                g.add_edge(u, v);
            }
        }
    }
    for v in first..n {
        let parent = rng.gen_range(0..bags.len());
        let mut bag = bags[parent].clone();
        bag.shuffle(rng);
        bag.truncate(k);
        for &u in &bag {
            if rng.gen_bool(keep) {
                g.add_edge(u, v);
            }
        }
        bag.push(v);
        bags.push(bag);
        edges.push((parent, bags.len() - 1));
    }
    (g, TreeDecomposition::new(bags, edges))
}
