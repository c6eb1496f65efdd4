//! {P3}- and {P4}-TM-Deletion over nice tree decompositions.
//!
//! Every bag vertex carries a role; edges enter the partial graph at the
//! introduce node they are charged to, so the two sides of a join never share
//! an edge. Deleted vertices are role 0 in both programs.

use crate::decomp::{NiceTreeDecomposition, NodeKind};
use crate::error::{capability, input, width_cap, Result};
use crate::graph::Graph;
use crate::Solved;
use std::collections::HashMap;

pub const P3_MAX_WIDTH: usize = 12;
pub const P4_MAX_WIDTH: usize = 8;

const BITS: usize = 3;
const DEL: u8 = 0;

fn get(key: u64, i: usize) -> u8 {
    ((key >> (BITS * i)) & 7) as u8
}

fn set(key: u64, i: usize, r: u8) -> u64 {
    (key & !(7 << (BITS * i))) | ((r as u64) << (BITS * i))
}

fn insert_at(key: u64, i: usize, r: u8) -> u64 {
    let lo = key & ((1u64 << (BITS * i)) - 1);
    let hi = key >> (BITS * i);
    lo | ((r as u64) << (BITS * i)) | (hi << (BITS * (i + 1)))
}

fn remove_at(key: u64, i: usize) -> u64 {
    let lo = key & ((1u64 << (BITS * i)) - 1);
    let hi = key >> (BITS * (i + 1));
    lo | (hi << (BITS * i))
}

trait Roles {
    const K: u8;
    const FRESH: u8;
    const NAME: &'static str;
    /// Roles after adding an edge between two live vertices.
    fn edge(a: u8, b: u8) -> &'static [(u8, u8)];
    fn join(a: u8, b: u8) -> Option<u8>;
    fn forget_ok(g: &Graph, v: usize, bag: &[usize], key: u64) -> bool;
}

struct P3;

// 1: degree 0, 2: degree 1
impl Roles for P3 {
    const K: u8 = 3;
    const FRESH: u8 = 1;
    const NAME: &'static str = "P3";

    fn edge(a: u8, b: u8) -> &'static [(u8, u8)] {
        match (a, b) {
            (1, 1) => &[(2, 2)],
            _ => &[],
        }
    }

    fn join(a: u8, b: u8) -> Option<u8> {
        match (a, b) {
            (0, 0) => Some(0),
            (1, x) | (x, 1) if x != 0 => Some(x),
            _ => None,
        }
    }

    fn forget_ok(_: &Graph, _: usize, _: &[usize], _: u64) -> bool {
        true
    }
}

struct P4;

const N: u8 = 1;
const C: u8 = 2;
const L: u8 = 3;
const T1: u8 = 4;
const T2: u8 = 5;

// N untouched, C star center, L attached leaf, T1/T2 triangle vertex of that degree
impl Roles for P4 {
    const K: u8 = 6;
    const FRESH: u8 = N;
    const NAME: &'static str = "P4";

    fn edge(a: u8, b: u8) -> &'static [(u8, u8)] {
        match (a, b) {
            (N, N) => &[(C, L), (L, C), (T1, T1)],
            (N, C) => &[(L, C)],
            (C, N) => &[(C, L)],
            (N, T1) => &[(T1, T2)],
            (T1, N) => &[(T2, T1)],
            (T1, T1) => &[(T2, T2)],
            _ => &[],
        }
    }

    fn join(a: u8, b: u8) -> Option<u8> {
        match (a, b) {
            (DEL, DEL) => Some(DEL),
            (N, x) | (x, N) if x != DEL => Some(x),
            (C, C) => Some(C),
            (T1, T1) => Some(T2),
            _ => None,
        }
    }

    fn forget_ok(g: &Graph, v: usize, bag: &[usize], key: u64) -> bool {
        let p = bag.binary_search(&v).unwrap();
        match get(key, p) {
            T1 => false,
            T2 => {
                // the first forgotten vertex of a triangle still sees both mates
                let mates: Vec<usize> = bag
                    .iter()
                    .enumerate()
                    .filter(|&(i, &u)| u != v && get(key, i) != DEL && g.has_edge(u, v))
                    .map(|(_, &u)| u)
                    .collect();
                mates.len() < 2 || g.has_edge(mates[0], mates[1])
            }
            _ => true,
        }
    }
}

type Table = HashMap<u64, u32>;

fn put(t: &mut Table, k: u64, w: u32) {
    t.entry(k).and_modify(|x| *x = (*x).min(w)).or_insert(w);
}

fn deleted_count(key: u64, len: usize) -> u32 {
    (0..len).filter(|&i| get(key, i) == DEL).count() as u32
}

/// Live-edge transitions at an introduce node, starting from one state.
fn apply_edges<R: Roles>(start: u64, p: usize, nbr_pos: &[usize], out: &mut Vec<u64>) {
    out.clear();
    out.push(start);
    let mut next = Vec::new();
    for &q in nbr_pos {
        next.clear();
        for &s in out.iter() {
            let b = get(s, q);
            if b == DEL {
                next.push(s);
                continue;
            }
            for &(a2, b2) in R::edge(get(s, p), b) {
                next.push(set(set(s, p, a2), q, b2));
            }
        }
        std::mem::swap(out, &mut next);
    }
}

fn join_partners<R: Roles>() -> Vec<Vec<(u8, u8)>> {
    (0..R::K).map(|a| (0..R::K).filter_map(|b| R::join(a, b).map(|r| (b, r))).collect()).collect()
}

fn join_preimages<R: Roles>() -> Vec<Vec<(u8, u8)>> {
    let mut pre = vec![Vec::new(); R::K as usize];
    for a in 0..R::K {
        for b in 0..R::K {
            if let Some(r) = R::join(a, b) {
                pre[r as usize].push((a, b));
            }
        }
    }
    pre
}

fn forward<R: Roles>(g: &Graph, ntd: &NiceTreeDecomposition) -> Vec<Table> {
    let partners = join_partners::<R>();
    let mut tables: Vec<Table> = Vec::with_capacity(ntd.nodes.len());
    let mut buf = Vec::new();
    for node in &ntd.nodes {
        let bag = &node.bag;
        let mut t = Table::new();
        match node.kind {
            NodeKind::Leaf => {
                t.insert(0, 0);
            }
            NodeKind::Introduce(v) => {
                let p = bag.binary_search(&v).unwrap();
                let nbr_pos: Vec<usize> = node.charged.iter().map(|u| bag.binary_search(u).unwrap()).collect();
                for (&c, &w) in &tables[node.children[0]] {
                    put(&mut t, insert_at(c, p, DEL), w + 1);
                    apply_edges::<R>(insert_at(c, p, R::FRESH), p, &nbr_pos, &mut buf);
                    for &s in &buf {
                        put(&mut t, s, w);
                    }
                }
            }
            NodeKind::Forget(v) => {
                let cb = &ntd.nodes[node.children[0]].bag;
                let p = cb.binary_search(&v).unwrap();
                for (&c, &w) in &tables[node.children[0]] {
                    if R::forget_ok(g, v, cb, c) {
                        put(&mut t, remove_at(c, p), w);
                    }
                }
            }
            NodeKind::Join => {
                let (t1, t2) = (&tables[node.children[0]], &tables[node.children[1]]);
                for (&c1, &w1) in t1 {
                    let dels = deleted_count(c1, bag.len());
                    // depth-first over per-position partner roles
                    let mut stack = vec![(0usize, 0u64, 0u64)];
                    while let Some((i, k2, kr)) = stack.pop() {
                        if i == bag.len() {
                            if let Some(&w2) = t2.get(&k2) {
                                put(&mut t, kr, w1 + w2 - dels);
                            }
                            continue;
                        }
                        for &(b, r) in &partners[get(c1, i) as usize] {
                            stack.push((i + 1, set(k2, i, b), set(kr, i, r)));
                        }
                    }
                }
            }
        }
        assert!(
            (t.len() as u64) <= (R::K as u64).pow(bag.len() as u32),
            "{} table exceeds {}^{}",
            R::NAME,
            R::K,
            bag.len()
        );
        tables.push(t);
    }
    tables
}

fn backtrack<R: Roles>(g: &Graph, ntd: &NiceTreeDecomposition, tables: &[Table]) -> Vec<usize> {
    let pre = join_preimages::<R>();
    let mut sol = Vec::new();
    let root = ntd.root();
    let mut stack = vec![(root, 0u64)];
    let mut buf = Vec::new();
    while let Some((x, s)) = stack.pop() {
        let node = &ntd.nodes[x];
        let w = tables[x][&s];
        let bag = &node.bag;
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let ch = node.children[0];
                let p = bag.binary_search(&v).unwrap();
                let base = remove_at(s, p);
                if get(s, p) == DEL {
                    debug_assert_eq!(tables[ch].get(&base), Some(&(w - 1)));
                    sol.push(v);
                    stack.push((ch, base));
                    continue;
                }
                let nbr_pos: Vec<usize> = node.charged.iter().map(|u| bag.binary_search(u).unwrap()).collect();
                let live: Vec<usize> = nbr_pos.iter().copied().filter(|&q| get(s, q) != DEL).collect();
                // enumerate child roles of live charged neighbours
                let combos = (R::K as u64 - 1).pow(live.len() as u32);
                let mut found = None;
                for mut code in 0..combos {
                    let mut c = s;
                    for &q in &live {
                        c = set(c, q, (code % (R::K as u64 - 1)) as u8 + 1);
                        code /= R::K as u64 - 1;
                    }
                    let c = set(c, p, R::FRESH);
                    let ck = remove_at(c, p);
                    if tables[ch].get(&ck) != Some(&w) {
                        continue;
                    }
                    apply_edges::<R>(c, p, &nbr_pos, &mut buf);
                    if buf.contains(&s) {
                        found = Some(ck);
                        break;
                    }
                }
                stack.push((ch, found.expect("introduce predecessor")));
            }
            NodeKind::Forget(v) => {
                let ch = node.children[0];
                let cb = &ntd.nodes[ch].bag;
                let p = cb.binary_search(&v).unwrap();
                let c = (0..R::K)
                    .map(|r| insert_at(s, p, r))
                    .find(|&c| tables[ch].get(&c) == Some(&w) && R::forget_ok(g, v, cb, c))
                    .expect("forget predecessor");
                stack.push((ch, c));
            }
            NodeKind::Join => {
                let (a, b) = (node.children[0], node.children[1]);
                let dels = deleted_count(s, bag.len());
                let mut st = vec![(0usize, 0u64, 0u64)];
                let mut found = None;
                while let Some((i, k1, k2)) = st.pop() {
                    if i == bag.len() {
                        if let (Some(&w1), Some(&w2)) = (tables[a].get(&k1), tables[b].get(&k2)) {
                            if w1 + w2 - dels == w {
                                found = Some((k1, k2));
                                break;
                            }
                        }
                        continue;
                    }
                    for &(r1, r2) in pre[get(s, i) as usize].iter().rev() {
                        st.push((i + 1, set(k1, i, r1), set(k2, i, r2)));
                    }
                }
                let (k1, k2) = found.expect("join predecessors");
                stack.push((b, k2));
                stack.push((a, k1));
            }
        }
    }
    sol.sort_unstable();
    sol.dedup();
    sol
}

fn solve<R: Roles>(g: &Graph, ntd: &NiceTreeDecomposition, cap: usize) -> Result<Solved> {
    if let Err(e) = ntd.check(g) {
        return input(format!("invalid nice tree decomposition: {e}"));
    }
    let w = ntd.width().max(0) as usize;
    let cap = width_cap(cap);
    if w > cap {
        return capability(format!("{} solver supports width <= {cap} (got {w})", R::NAME));
    }
    let tables = forward::<R>(g, ntd);
    let optimum = *tables[ntd.root()].get(&0).expect("deleting everything is feasible") as usize;
    let solution = backtrack::<R>(g, ntd, &tables);
    debug_assert_eq!(solution.len(), optimum);
    Ok(Solved { optimum, solution })
}

/// Minimum deletion leaving maximum degree at most 1.
pub fn solve_p3(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<Solved> {
    solve::<P3>(g, ntd, P3_MAX_WIDTH)
}

/// Minimum deletion leaving only stars and triangles.
pub fn solve_p4(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<Solved> {
    solve::<P4>(g, ntd, P4_MAX_WIDTH)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::all_graphs;
    use crate::decomp::heuristic_nice;
    use crate::family::Family;
    use crate::oracle::{min_deletion_bruteforce, Mode};
    use crate::pattern::{is_p3_free, is_p4_free};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p3(g: &Graph) -> Solved {
        solve_p3(g, &heuristic_nice(g)).unwrap()
    }

    fn p4(g: &Graph) -> Solved {
        solve_p4(g, &heuristic_nice(g)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(p3(&Graph::cycle(4)).optimum, 2);
        assert_eq!(p3(&Graph::path(3)).optimum, 1);
        assert_eq!(p3(&Graph::new(0)).optimum, 0);
        assert_eq!(p4(&Graph::cycle(3)).optimum, 0);
        assert_eq!(p4(&Graph::path(4)).optimum, 1);
        assert_eq!(p4(&Graph::complete(4)).optimum, 1);
        assert_eq!(p4(&Graph::star(5)).optimum, 0);
    }

    fn check(g: &Graph) {
        let a = p3(g);
        let b = p4(g);
        assert!(is_p3_free(&g.delete_vertices(&a.solution).unwrap().0));
        assert!(is_p4_free(&g.delete_vertices(&b.solution).unwrap().0));
        assert_eq!(a.solution.len(), a.optimum);
        assert_eq!(b.solution.len(), b.optimum);
        assert_eq!(a.optimum, min_deletion_bruteforce(g, &Family::p3(), Mode::Tm).unwrap().size, "{g:?}");
        assert_eq!(b.optimum, min_deletion_bruteforce(g, &Family::p4(), Mode::Tm).unwrap().size, "{g:?}");
    }

    #[test]
    fn matches_oracle_small() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                check(&g);
            }
        }
    }

    #[test]
    fn matches_oracle_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(7..=10);
            let p = rng.gen_range(0.15..0.5);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            check(&g);
        }
    }

    #[test]
    fn rejects_bad_decomposition() {
        let g = Graph::path(3);
        let h = Graph::path(2);
        assert!(solve_p3(&g, &heuristic_nice(&h)).is_err());
    }

    #[test]
    fn key_packing() {
        let k = insert_at(insert_at(0, 0, 3), 1, 5);
        assert_eq!((get(k, 0), get(k, 1)), (3, 5));
        let k2 = insert_at(k, 1, 2);
        assert_eq!((get(k2, 0), get(k2, 1), get(k2, 2)), (3, 2, 5));
        assert_eq!(remove_at(k2, 1), k);
    }
}
