//! Generic F-TM-Deletion over a rooted branch decomposition, keyed by
//! (deleted boundary vertices, folio of the remaining partial graph).
//!
//! A folio is down-closed under rooted topological containment, so it is
//! stored as its antichain of maximal members. Members carry labels 1..|Z|
//! by rank in the surviving boundary Z; globally, vertex v has label v + 1.

use crate::boundaried::{merge, BoundariedGraph};
use crate::canon::CanonCode;
use crate::decomp::{heuristic_td, td_to_branch, BranchDecomposition};
use crate::error::{capability, input, width_cap, Result};
use crate::family::Family;
use crate::graph::Graph;
use crate::pattern::{contains_family_tm, is_rooted_topological_minor, tpm};
use crate::Solved;
use std::collections::{BTreeMap, BTreeSet};

/// Treewidth cap when the decomposition is built internally.
pub const FOLIO_MAX_WIDTH: usize = 4;

#[derive(Clone, Debug)]
struct Antichain {
    members: Vec<BoundariedGraph>,
}

impl Antichain {
    fn key(&self) -> Vec<CanonCode> {
        let mut k: Vec<CanonCode> = self.members.iter().map(BoundariedGraph::canonical_key).collect();
        k.sort();
        k
    }
}

#[derive(Clone, Debug)]
struct Cell {
    cost: usize,
    sol: Vec<usize>,
    folio: Antichain,
}

type Table = BTreeMap<(Vec<usize>, Vec<CanonCode>), Cell>;

fn offer(t: &mut Table, deleted: Vec<usize>, cell: Cell) {
    let key = (deleted, cell.folio.key());
    match t.get(&key) {
        Some(old) if (old.cost, &old.sol) <= (cell.cost, &cell.sol) => {}
        _ => {
            t.insert(key, cell);
        }
    }
}

fn map_labels(b: &BoundariedGraph, f: impl Fn(u32) -> Option<u32>) -> BoundariedGraph {
    BoundariedGraph { graph: b.graph.clone(), labels: b.labels.iter().map(|l| l.and_then(&f)).collect() }
}

fn to_global(b: &BoundariedGraph, z: &[usize]) -> BoundariedGraph {
    map_labels(b, |l| Some(z[l as usize - 1] as u32 + 1))
}

fn to_rank(b: &BoundariedGraph, z: &[usize]) -> BoundariedGraph {
    map_labels(b, |l| z.binary_search(&(l as usize - 1)).ok().map(|i| i as u32 + 1))
}

/// Keeps the members not rooted-contained in another member.
fn maximal(mut cands: Vec<BoundariedGraph>) -> Vec<BoundariedGraph> {
    let mut seen = BTreeSet::new();
    cands.retain(|b| seen.insert(b.canonical_key()));
    cands.sort_by(|a, b| (b.graph.n(), b.graph.m()).cmp(&(a.graph.n(), a.graph.m())).then(a.canonical_key().cmp(&b.canonical_key())));
    let mut kept: Vec<BoundariedGraph> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| is_rooted_topological_minor(&c, k)) {
            kept.push(c);
        }
    }
    kept
}

fn eliminate(g: &Graph, labels: &[Option<u32>], order: &[usize], out: &mut BTreeMap<CanonCode, BoundariedGraph>, drop: &mut Vec<usize>) {
    let Some((&w, rest)) = order.split_first() else {
        let (h, map) = g.delete_vertices(drop).unwrap();
        let b = BoundariedGraph { graph: h, labels: map.iter().map(|&v| labels[v]).collect() }.canonical();
        out.entry(b.canonical_key()).or_insert(b);
        return;
    };
    let nb = g.neighbors(w).to_vec();
    let mut suppressed = false;
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            let (a, c) = (nb[i], nb[j]);
            if g.has_edge(a, c) {
                continue;
            }
            let mut h = g.clone();
            for &x in &nb {
                h.remove_edge(w, x);
            }
            h.add_edge(a, c);
            drop.push(w);
            eliminate(&h, labels, rest, out, drop);
            drop.pop();
            suppressed = true;
        }
    }
    if !suppressed {
        // deleting is dominated by any suppression
        let mut h = g.clone();
        for &x in &nb {
            h.remove_edge(w, x);
        }
        drop.push(w);
        eliminate(&h, labels, rest, out, drop);
        drop.pop();
    }
}

/// Maximal members of the folio of `x` with at most `r` non-boundary vertices.
fn max_folio(x: &BoundariedGraph, r: usize) -> Vec<BoundariedGraph> {
    let nb: Vec<usize> = (0..x.graph.n()).filter(|&v| x.labels[v].is_none()).collect();
    if nb.len() <= r {
        return vec![x.canonical()];
    }
    let mut out = BTreeMap::new();
    // every maximal member keeps exactly r non-boundary vertices
    let k = r;
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        let elim: Vec<usize> = (0..nb.len()).filter(|i| !comb.contains(i)).map(|i| nb[i]).collect();
        eliminate(&x.graph, &x.labels, &elim, &mut out, &mut Vec::new());
        let mut i = k;
        while i > 0 && comb[i - 1] == nb.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        comb[i - 1] += 1;
        for j in i..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
    maximal(out.into_values().collect())
}

struct Ctx<'a> {
    family: &'a [Graph],
    d: usize,
}

impl<'a> Ctx<'a> {
    /// Folio of a concrete partial graph, or `None` if it contains F.
    fn folio_of(&self, b: &BoundariedGraph) -> Result<Option<Antichain>> {
        if contains_family_tm(self.family, &b.graph)? {
            return Ok(None);
        }
        Ok(Some(Antichain { members: max_folio(b, self.d) }))
    }

    fn leaf(&self, g: &Graph, (u, v): (usize, usize), mid: &[usize]) -> Result<Table> {
        let mut t = Table::new();
        for mask in 0..4u8 {
            let sol: Vec<usize> = [u, v].iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            let alive: Vec<usize> = [u, v].iter().copied().filter(|x| !sol.contains(x)).collect();
            let deleted: Vec<usize> = sol.iter().copied().filter(|x| mid.contains(x)).collect();
            let z: Vec<usize> = mid.iter().copied().filter(|x| !deleted.contains(x)).collect();
            let mut h = Graph::new(alive.len());
            if alive.len() == 2 && g.has_edge(u, v) {
                h.add_edge(0, 1);
            }
            let labels = alive.iter().map(|x| z.binary_search(x).ok().map(|i| i as u32 + 1)).collect();
            let b = BoundariedGraph { graph: h, labels };
            if let Some(folio) = self.folio_of(&b)? {
                offer(&mut t, deleted, Cell { cost: sol.len(), sol, folio });
            }
        }
        Ok(t)
    }

    fn combine(&self, mid_a: &[usize], ta: &Table, mid_b: &[usize], tb: &Table, mid: &[usize]) -> Result<Table> {
        let mut t = Table::new();
        for ((la, _), ca) in ta {
            for ((lb, _), cb) in tb {
                // shared vertices must agree on deletion
                let ok = la.iter().all(|v| mid_b.binary_search(v).is_err() || lb.binary_search(v).is_ok())
                    && lb.iter().all(|v| mid_a.binary_search(v).is_err() || la.binary_search(v).is_ok());
                if !ok {
                    continue;
                }
                let both = la.iter().filter(|v| lb.binary_search(v).is_ok()).count();
                let mut sol: Vec<usize> = ca.sol.iter().chain(&cb.sol).copied().collect();
                sol.sort_unstable();
                sol.dedup();
                let deleted: Vec<usize> = mid.iter().copied().filter(|v| sol.binary_search(v).is_ok()).collect();
                let z: Vec<usize> = mid.iter().copied().filter(|v| deleted.binary_search(v).is_err()).collect();
                let za: Vec<usize> = mid_a.iter().copied().filter(|v| la.binary_search(v).is_err()).collect();
                let zb: Vec<usize> = mid_b.iter().copied().filter(|v| lb.binary_search(v).is_err()).collect();
                let mut cands = Vec::new();
                let mut hit = false;
                'pairs: for ma in &ca.folio.members {
                    let ga = to_global(ma, &za);
                    for mb in &cb.folio.members {
                        let x = merge(&ga, &to_global(mb, &zb));
                        if contains_family_tm(self.family, &x.graph)? {
                            hit = true;
                            break 'pairs;
                        }
                        cands.extend(max_folio(&to_rank(&x, &z), self.d));
                    }
                }
                if hit {
                    continue;
                }
                let cost = ca.cost + cb.cost - both;
                debug_assert_eq!(cost, sol.len());
                offer(&mut t, deleted, Cell { cost, sol, folio: Antichain { members: maximal(cands) } });
            }
        }
        Ok(t)
    }
}

/// Largest number (at most d) of isolated vertices that can be added to a
/// boundary-free folio without creating a member of F.
fn isolated_room(ctx: &Ctx, folio: &Antichain, iso: usize) -> Result<usize> {
    let cap = iso.min(ctx.d);
    for k in (0..=cap).rev() {
        let mut bad = false;
        for m in &folio.members {
            let g = m.graph.disjoint_union(&Graph::new(k));
            if contains_family_tm(ctx.family, &g)? {
                bad = true;
                break;
            }
        }
        if !bad {
            return Ok(if k == cap { iso } else { k });
        }
    }
    Ok(0)
}

/// Minimum deletion excluding every member of `family` as a topological
/// minor, over the given branch decomposition (`None` for edgeless graphs).
pub fn solve_tm_folio(g: &Graph, family: &Family, bd: Option<&BranchDecomposition>) -> Result<Solved> {
    let ctx = Ctx { family: &family.members, d: family.size() };
    let root_cells: Vec<Cell> = match bd {
        None => {
            if g.m() > 0 {
                return input("graph has edges but no branch decomposition was given");
            }
            vec![Cell { cost: 0, sol: Vec::new(), folio: Antichain { members: vec![BoundariedGraph::empty()] } }]
        }
        Some(bd) => {
            if let Err(e) = bd.check(g) {
                return input(format!("invalid branch decomposition: {e}"));
            }
            let cap = width_cap(FOLIO_MAX_WIDTH) + 2;
            if bd.width() > cap {
                return capability(format!("folio solver supports branch width <= {cap} (got {})", bd.width()));
            }
            let mut tables: Vec<Table> = Vec::with_capacity(bd.nodes.len());
            for node in &bd.nodes {
                let t = match node.edge {
                    Some(e) => ctx.leaf(g, e, &node.mid)?,
                    None => {
                        let (a, b) = (node.children[0], node.children[1]);
                        ctx.combine(&bd.nodes[a].mid, &tables[a], &bd.nodes[b].mid, &tables[b], &node.mid)?
                    }
                };
                tables.push(t);
            }
            tables.pop().unwrap().into_values().collect()
        }
    };
    let iso: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for cell in root_cells {
        let keep = isolated_room(&ctx, &cell.folio, iso.len())?;
        let mut sol = cell.sol.clone();
        sol.extend_from_slice(&iso[..iso.len() - keep]);
        sol.sort_unstable();
        let cand = (sol.len(), sol);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    let (optimum, solution) = best.expect("deleting everything is feasible");
    Ok(Solved { optimum, solution })
}

/// Builds a branch decomposition from the min-fill heuristic.
pub fn heuristic_branch(g: &Graph) -> Result<Option<BranchDecomposition>> {
    let td = heuristic_td(g);
    let w = td.width().max(0) as usize;
    let cap = width_cap(FOLIO_MAX_WIDTH);
    if w > cap {
        return capability(format!("folio solver supports width <= {cap} (got {w})"));
    }
    td_to_branch(&td, g)
}

/// Minor-mode deletion through the union of tpm sets, pruned to an antichain.
pub fn minor_family(family: &Family) -> Result<Family> {
    let mut members = Vec::new();
    for h in &family.members {
        members.extend(tpm(h)?);
    }
    Family::new(format!("tpm({})", family.name), members)?.antichain()
}

pub fn solve_minor(g: &Graph, family: &Family, bd: Option<&BranchDecomposition>) -> Result<Solved> {
    solve_tm_folio(g, &minor_family(family)?, bd)
}
