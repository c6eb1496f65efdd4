//! Lower-bound instance generators: the Vertex Cover reduction and the
//! permutation-clique construction with its path and K-class completions.
//!
//! Permutation clique instances live on the k x k grid; cell (i, j) (both
//! 0-based, i the row, j the column) has id `i * k + j`. A permutation
//! `sigma` maps each column j to a row, and is a solution when the cells
//! `(sigma[j], j)` form a clique.

use crate::canon::is_isomorphic;
use crate::error::{input, Result};
use crate::family::Family;
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialPair {
    pub h: Graph,
    /// Vertices of the leaf block, sorted.
    pub block: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

impl EssentialPair {
    /// H minus (V(B) - {a}); `a` keeps its position in the returned map.
    pub fn core(&self) -> (Graph, Vec<usize>) {
        let drop: Vec<usize> = self.block.iter().copied().filter(|&v| v != self.a).collect();
        self.h.delete_vertices(&drop).unwrap()
    }

    pub fn block_graph(&self) -> Graph {
        self.h.induced_subgraph(&self.block).unwrap().0
    }

    fn local(&self, v: usize) -> usize {
        self.block.binary_search(&v).unwrap()
    }
}

/// Picks a member and a leaf block with the fewest edges. Ties go to the
/// earliest member, then the lexicographically first block; `a` is the cut
/// vertex (or the least vertex) and `b` its least neighbour in the block.
pub fn essential_pair(family: &Family) -> Result<EssentialPair> {
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (hi, h) in family.members.iter().enumerate() {
        if h.n() < 2 || !h.is_connected() {
            return input(format!("member {hi} must be connected with at least 2 vertices"));
        }
        let bct = h.block_cut_tree();
        for bi in bct.leaf_blocks() {
            let blk = &bct.blocks[bi];
            let m = h.induced_subgraph(blk)?.0.m();
            if best.as_ref().map_or(true, |b| m < b.0) {
                best = Some((m, hi, blk.clone()));
            }
        }
    }
    let (_, hi, block) = best.unwrap();
    let h = family.members[hi].clone();
    let bct = h.block_cut_tree();
    let a = block.iter().copied().find(|v| bct.cut_vertices.contains(v)).unwrap_or(block[0]);
    let b = h.neighbors(a).iter().copied().find(|v| block.contains(v)).unwrap();
    Ok(EssentialPair { h, block, a, b })
}

/// True iff no leaf block of any member is K_{2,r} or K_{2,r} plus the edge
/// between its two high-degree sides.
pub fn in_k_class(family: &Family) -> bool {
    family.members.iter().all(|h| {
        if !h.is_connected() {
            return false;
        }
        let bct = h.block_cut_tree();
        bct.leaf_blocks().into_iter().all(|bi| {
            let b = h.induced_subgraph(&bct.blocks[bi]).unwrap().0;
            if b.n() < 2 {
                return true;
            }
            let k2r = Graph::complete_bipartite(2, b.n() - 2);
            let mut plus = k2r.clone();
            plus.add_edge(0, 1);
            !is_isomorphic(&b, &k2r) && !is_isomorphic(&b, &plus)
        })
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChoiceGadget {
    pub xs: Vec<usize>,
    pub zs: Vec<usize>,
}

impl ChoiceGadget {
    /// The size-2s solution sparing `xs[i]`.
    pub fn solution_sparing(&self, i: usize) -> Vec<usize> {
        let s = self.xs.len();
        let mut out: Vec<usize> = (0..s).filter(|&j| j != i).map(|j| self.xs[j]).collect();
        // 1-based: z_{2j-1} for j <= i, z_{2j} for j >= i
        let i1 = i + 1;
        out.extend((1..=i1).map(|j| self.zs[2 * j - 1]));
        out.extend((i1..=s).map(|j| self.zs[2 * j]));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCode {
    /// Endpoints as (row, column), first row <= second row.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub dl: usize,
    pub dm: usize,
    pub dr: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completion {
    Paths,
    Kclass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub k: usize,
    pub c: Vec<usize>,
    pub r: Vec<usize>,
    /// t[i][j]
    pub t: Vec<Vec<usize>>,
    pub edges: Vec<EdgeCode>,
    pub column_gadgets: Vec<ChoiceGadget>,
    /// Keyed by the row pair (p, q), p < q.
    pub edge_gadgets: BTreeMap<(usize, usize), ChoiceGadget>,
}

#[derive(Clone, Debug)]
pub struct HardnessInstance {
    pub graph: Graph,
    pub budget: usize,
    pub registry: BTreeMap<String, Vec<usize>>,
    pub meta: String,
    pub family: Family,
    pub layout: Option<Layout>,
}

struct Builder<'a> {
    g: Graph,
    reg: BTreeMap<String, Vec<usize>>,
    ep: &'a EssentialPair,
}

impl<'a> Builder<'a> {
    fn new(ep: &'a EssentialPair) -> Self {
        Builder { g: Graph::new(0), reg: BTreeMap::new(), ep }
    }

    fn vertex(&mut self, name: String) -> usize {
        let v = self.g.add_vertex();
        self.g.set_name(v, name);
        v
    }

    /// Copies `h`, identifying the listed vertices, skipping `skip` edges.
    fn copy(&mut self, name: String, h: &Graph, fixed: &[(usize, usize)], skip: Option<(usize, usize)>) -> Vec<usize> {
        let mut map = vec![usize::MAX; h.n()];
        for &(x, y) in fixed {
            map[x] = y;
        }
        for x in 0..h.n() {
            if map[x] == usize::MAX {
                map[x] = self.vertex(format!("{name}.{x}"));
            }
        }
        for (x, y) in h.edges() {
            if skip.map_or(false, |(s, t)| (s, t) == (x, y) || (t, s) == (x, y)) {
                continue;
            }
            self.g.add_edge(map[x], map[y]);
        }
        let mut vs = map.clone();
        vs.sort_unstable();
        self.reg.insert(name, vs);
        map
    }

    /// First vertex on y, second on x.
    fn h_edge(&mut self, name: String, x: usize, y: usize) {
        let h = self.ep.h.clone();
        self.copy(name, &h, &[(self.ep.a, y), (self.ep.b, x)], None);
    }

    fn b_edge(&mut self, name: String, x: usize, y: usize) {
        let b = self.ep.block_graph();
        let (la, lb) = (self.ep.local(self.ep.a), self.ep.local(self.ep.b));
        self.copy(name, &b, &[(la, y), (lb, x)], None);
    }

    fn double_h_edge(&mut self, name: &str, x: usize, y: usize, z: usize) {
        self.h_edge(format!("{name}/H"), z, y);
        self.b_edge(format!("{name}/B"), x, y);
    }

    fn choice(&mut self, name: &str, xs: &[usize]) -> ChoiceGadget {
        let s = xs.len();
        let zs: Vec<usize> = (0..2 * s + 2).map(|i| self.vertex(format!("{name}.z{i}"))).collect();
        for i in 0..=2 * s {
            self.h_edge(format!("{name}/H{i}"), zs[i], zs[i + 1]);
        }
        for (i, &x) in xs.iter().enumerate() {
            let i1 = i + 1;
            self.b_edge(format!("{name}/B{}", 2 * i1 - 1), x, zs[2 * i1 - 1]);
            self.b_edge(format!("{name}/B{}", 2 * i1), x, zs[2 * i1]);
        }
        let mut all = xs.to_vec();
        all.extend_from_slice(&zs);
        for (key, vs) in self.reg.range(format!("{name}/")..format!("{name}0")) {
            debug_assert!(key.starts_with(name));
            all.extend_from_slice(vs);
        }
        all.sort_unstable();
        all.dedup();
        self.reg.insert(name.to_string(), all);
        ChoiceGadget { xs: xs.to_vec(), zs }
    }
}

/// A standalone H-choice gadget on s fresh vertices, budget 2s.
pub fn choice_gadget(family: &Family, s: usize) -> Result<(HardnessInstance, ChoiceGadget)> {
    let family = family.antichain()?;
    let ep = essential_pair(&family)?;
    let mut b = Builder::new(&ep);
    let xs: Vec<usize> = (0..s).map(|i| b.vertex(format!("x{}", i + 1))).collect();
    let cg = b.choice("choice", &xs);
    let inst = HardnessInstance {
        graph: b.g,
        budget: 2 * s,
        registry: b.reg,
        meta: format!("choice gadget, s={s}"),
        family,
        layout: None,
    };
    Ok((inst, cg))
}

/// Vertex Cover to F-TM-Deletion: a core copy per vertex and a B copy per
/// edge. The budget field holds the number of input vertices.
pub fn vc_reduction(g: &Graph, family: &Family) -> Result<HardnessInstance> {
    let family = family.antichain()?;
    let ep = essential_pair(&family)?;
    let (core, cmap) = ep.core();
    let ca = cmap.iter().position(|&v| v == ep.a).unwrap();
    let mut b = Builder::new(&ep);
    let vs: Vec<usize> = (0..g.n()).map(|v| b.vertex(format!("v{}", v + 1))).collect();
    for v in 0..g.n() {
        b.copy(format!("A{}", v + 1), &core, &[(ca, vs[v])], None);
    }
    for (u, v) in g.edges() {
        b.b_edge(format!("B{}-{}", u + 1, v + 1), vs[v], vs[u]);
    }
    Ok(HardnessInstance {
        graph: b.g,
        budget: g.n(),
        registry: b.reg,
        meta: format!("vertex cover reduction, n={} m={}", g.n(), g.m()),
        family,
        layout: None,
    })
}

pub fn cell(k: usize, i: usize, j: usize) -> usize {
    i * k + j
}

/// Builds G'' from a k x k permutation clique instance.
pub fn general_construction(g_pc: &Graph, k: usize, family: &Family, completion: Completion) -> Result<HardnessInstance> {
    if k < 2 || g_pc.n() != k * k {
        return input("permutation clique instance needs k >= 2 and k*k vertices");
    }
    let family = family.antichain()?;
    let h_path = match completion {
        Completion::Paths => {
            let ok = family.members.len() == 1 && {
                let h = &family.members[0];
                h.n() >= 6 && h.m() == h.n() - 1 && h.max_degree() <= 2 && h.is_connected()
            };
            if !ok {
                return input("paths completion needs a single path on at least 6 vertices");
            }
            family.members[0].n()
        }
        Completion::Kclass => {
            if !in_k_class(&family) {
                return input("kclass completion needs every leaf block to avoid K_{2,r} and K_{2,r}^+");
            }
            0
        }
    };
    let ep = essential_pair(&family)?;
    let mut b = Builder::new(&ep);
    let c: Vec<usize> = (0..k).map(|i| b.vertex(format!("c{}", i + 1))).collect();
    let r: Vec<usize> = (0..k).map(|j| b.vertex(format!("r{}", j + 1))).collect();
    let t: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).map(|j| b.vertex(format!("t{}_{}", i + 1, j + 1))).collect()).collect();
    for i in 0..k {
        for j in 0..k {
            b.g.add_edge(r[j], t[i][j]);
            b.g.add_edge(t[i][j], c[i]);
        }
    }
    let column_gadgets: Vec<ChoiceGadget> =
        (0..k).map(|j| b.choice(&format!("col{}", j + 1), &(0..k).map(|i| t[i][j]).collect::<Vec<_>>())).collect();

    let mut edges = Vec::new();
    for (u, v) in g_pc.edges() {
        let (mut x, mut y) = ((u / k, u % k), (v / k, v % k));
        if x.0 == y.0 {
            continue;
        }
        if x.0 > y.0 {
            std::mem::swap(&mut x, &mut y);
        }
        let tag = format!("e{}_{}-{}_{}", x.0 + 1, x.1 + 1, y.0 + 1, y.1 + 1);
        let dl = b.vertex(format!("{tag}.dl"));
        let dm = b.vertex(format!("{tag}.dm"));
        let dr = b.vertex(format!("{tag}.dr"));
        b.g.add_edge(dl, c[x.0]);
        b.g.add_edge(dl, r[x.1]);
        b.g.add_edge(dr, c[y.0]);
        b.g.add_edge(dr, r[y.1]);
        b.double_h_edge(&tag, dl, dm, dr);
        edges.push(EdgeCode { left: x, right: y, dl, dm, dr });
    }
    let mut edge_gadgets = BTreeMap::new();
    for p in 0..k {
        for q in p + 1..k {
            let xs: Vec<usize> = edges.iter().filter(|e| (e.left.0, e.right.0) == (p, q)).map(|e| e.dl).collect();
            if xs.is_empty() {
                continue;
            }
            edge_gadgets.insert((p, q), b.choice(&format!("E{}_{}", p + 1, q + 1), &xs));
        }
    }
    let budget = 3 * edges.len() + 2 * k * k;

    match completion {
        Completion::Paths => {
            let len = h_path - 6;
            for i in 0..k {
                for j in 0..k {
                    let mut prev = t[i][j];
                    let mut vs = Vec::new();
                    for s in 0..len {
                        let v = b.vertex(format!("t{}_{}.p{s}", i + 1, j + 1));
                        b.g.add_edge(prev, v);
                        vs.push(v);
                        prev = v;
                    }
                    if len > 0 {
                        b.reg.insert(format!("pendant{}_{}", i + 1, j + 1), vs);
                    }
                }
            }
        }
        Completion::Kclass => {
            let r0 = b.vertex("r0".into());
            let (core, cmap) = ep.core();
            let ca = cmap.iter().position(|&v| v == ep.a).unwrap();
            b.copy("root_core".into(), &core, &[(ca, r0)], None);
            let bg = ep.block_graph();
            let (la, lb) = (ep.local(ep.a), ep.local(ep.b));
            for j in 0..k {
                b.copy(format!("bbar{}", j + 1), &bg, &[(la, r0), (lb, r[j])], Some((la, lb)));
            }
        }
    }

    Ok(HardnessInstance {
        graph: b.g,
        budget,
        registry: b.reg,
        meta: format!("permutation clique construction, k={k}, {} encoded edges, completion {completion:?}", edges.len()),
        family,
        layout: Some(Layout { k, c, r, t, edges, column_gadgets, edge_gadgets }),
    })
}

pub fn is_permutation_clique(g_pc: &Graph, k: usize, sigma: &[usize]) -> bool {
    let mut rows = sigma.to_vec();
    rows.sort_unstable();
    if sigma.len() != k || rows != (0..k).collect::<Vec<_>>() {
        return false;
    }
    (0..k).all(|p| (p + 1..k).all(|q| g_pc.has_edge(cell(k, sigma[p], p), cell(k, sigma[q], q))))
}

/// All permutation cliques, by enumeration (intended for k <= 4).
pub fn permutation_cliques(g_pc: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |s| {
        if is_permutation_clique(g_pc, k, s) {
            out.push(s.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Random instance with a planted permutation clique plus noise edges.
pub fn random_permclique<R: Rng>(rng: &mut R, k: usize, p: f64) -> (Graph, Vec<usize>) {
    let mut sigma: Vec<usize> = (0..k).collect();
    sigma.shuffle(rng);
    let mut g = Graph::new(k * k);
    for u in 0..k * k {
        for v in u + 1..k * k {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            g.add_edge(cell(k, sigma[a], a), cell(k, sigma[b], b));
        }
    }
    (g, sigma)
}

/// The solution associated with a permutation clique; sorted.
pub fn sigma_solution(inst: &HardnessInstance, sigma: &[usize]) -> Result<Vec<usize>> {
    let Some(lay) = &inst.layout else {
        return input("instance has no permutation clique layout");
    };
    let k = lay.k;
    let mut rows = sigma.to_vec();
    rows.sort_unstable();
    if sigma.len() != k || rows != (0..k).collect::<Vec<_>>() {
        return input("sigma is not a permutation");
    }
    let mut inv = vec![0; k];
    for (j, &i) in sigma.iter().enumerate() {
        inv[i] = j;
    }
    let mut s = Vec::new();
    for (j, cg) in lay.column_gadgets.iter().enumerate() {
        s.extend(cg.solution_sparing(sigma[j]));
    }
    for (&(p, q), cg) in &lay.edge_gadgets {
        let want = ((p, inv[p]), (q, inv[q]));
        let pos = lay
            .edges
            .iter()
            .filter(|e| (e.left.0, e.right.0) == (p, q))
            .position(|e| (e.left, e.right) == want);
        let Some(pos) = pos else {
            return input(format!("sigma is not a clique: rows {} and {} are not joined", p + 1, q + 1));
        };
        s.extend(cg.solution_sparing(pos));
    }
    for p in 0..k {
        for q in p + 1..k {
            if !lay.edge_gadgets.contains_key(&(p, q)) {
                return input(format!("sigma is not a clique: no edge between rows {} and {}", p + 1, q + 1));
            }
        }
    }
    for e in &lay.edges {
        let chosen = e.left == (e.left.0, inv[e.left.0]) && e.right == (e.right.0, inv[e.right.0]);
        s.push(if chosen { e.dm } else { e.dr });
    }
    s.sort_unstable();
    debug_assert_eq!(s.len(), inst.budget);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCheck {
    pub holds: bool,
    /// Set when exactly one t-vertex per column survives, in distinct rows.
    pub sigma: Option<Vec<usize>>,
}

pub fn check_permutation_property(inst: &HardnessInstance, s: &[usize]) -> Result<PermutationCheck> {
    let Some(lay) = &inst.layout else {
        return input("instance has no permutation clique layout");
    };
    let k = lay.k;
    let mut ins = vec![false; inst.graph.n()];
    for &v in s {
        if v >= ins.len() {
            return input("vertex out of range");
        }
        ins[v] = true;
    }
    let row_ok = |row: usize, keep_col: usize| (0..k).all(|j| j == keep_col || ins[lay.t[row][j]]);
    let holds = lay
        .edges
        .iter()
        .all(|e| (ins[e.dl] || row_ok(e.left.0, e.left.1)) && (ins[e.dr] || row_ok(e.right.0, e.right.1)));
    let mut sigma = Vec::with_capacity(k);
    for j in 0..k {
        let alive: Vec<usize> = (0..k).filter(|&i| !ins[lay.t[i][j]]).collect();
        if alive.len() != 1 {
            return Ok(PermutationCheck { holds, sigma: None });
        }
        sigma.push(alive[0]);
    }
    let mut rows = sigma.clone();
    rows.sort_unstable();
    rows.dedup();
    Ok(PermutationCheck { holds, sigma: (rows.len() == k).then_some(sigma) })
}

/// Sidecar written next to a generated instance; vertex ids are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub schema: u32,
    pub meta: String,
    pub family: String,
    pub budget: usize,
    pub completion: Option<Completion>,
    pub registry: BTreeMap<String, Vec<usize>>,
    pub sigma: Option<Vec<usize>>,
    pub sigma_solution: Option<Vec<usize>>,
}

impl HardnessInstance {
    pub fn sidecar(&self, completion: Option<Completion>, sigma: Option<&[usize]>) -> Result<Sidecar> {
        let one = |vs: &[usize]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
        let sol = match sigma {
            Some(s) => Some(one(&sigma_solution(self, s)?)),
            None => None,
        };
        Ok(Sidecar {
            schema: 1,
            meta: self.meta.clone(),
            family: self.family.name.clone(),
            budget: self.budget,
            completion,
            registry: self.registry.iter().map(|(k, v)| (k.clone(), one(v))).collect(),
            sigma: sigma.map(one),
            sigma_solution: sol,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::heuristic_td;
    use crate::oracle::{min_deletion, min_deletion_bruteforce, verify_solution, Mode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(s: &str) -> Family {
        Family::named(s).unwrap()
    }

    #[test]
    fn essential_pairs() {
        let ep = essential_pair(&fam("k4")).unwrap();
        assert_eq!((ep.block.len(), ep.a, ep.b), (4, 0, 1));
        assert_eq!(ep.core().0.n(), 1);
        let ep = essential_pair(&fam("c5")).unwrap();
        assert_eq!(ep.core().0.n(), 1);
        let ep = essential_pair(&fam("p6")).unwrap();
        assert_eq!(ep.block, vec![0, 1]);
        assert_eq!((ep.a, ep.b), (1, 0));
        assert_eq!(ep.core().0.n(), 5);
        assert!(essential_pair(&Family::new("bad", vec![Graph::new(3)]).unwrap()).is_err());
    }

    #[test]
    fn k_class_membership() {
        assert!(in_k_class(&fam("k4")));
        assert!(in_k_class(&fam("c5")));
        assert!(!in_k_class(&fam("c4")));
        assert!(!in_k_class(&fam("c3")));
        assert!(!in_k_class(&fam("p6")));
        assert!(!in_k_class(&fam("diamond")));
    }

    #[test]
    fn choice_gadget_shape() {
        for s in 1..4 {
            let (inst, cg) = choice_gadget(&fam("p6"), s).unwrap();
            assert_eq!(cg.zs.len(), 2 * s + 2);
            let h = inst.registry.keys().filter(|k| k.starts_with("choice/H")).count();
            let b = inst.registry.keys().filter(|k| k.starts_with("choice/B")).count();
            assert_eq!((h, b), (2 * s + 1, 2 * s));
            assert_eq!(inst.graph.n(), s + (2 * s + 2) + (2 * s + 1) * 4);
            for i in 0..s {
                let sol = cg.solution_sparing(i);
                assert_eq!(sol.len(), 2 * s);
                assert!(!sol.contains(&cg.xs[i]));
                assert!(verify_solution(&inst.graph, &inst.family, &sol, Mode::Tm).unwrap());
            }
        }
    }

    #[test]
    fn vc_examples() {
        let i = vc_reduction(&Graph::path(2), &fam("k4")).unwrap();
        assert_eq!(i.graph.n(), 4);
        assert_eq!(min_deletion_bruteforce(&i.graph, &i.family, Mode::Tm).unwrap().size, 1);
        let i = vc_reduction(&Graph::cycle(3), &fam("c5")).unwrap();
        assert_eq!(i.graph.n(), 3 + 3 * 3);
        assert_eq!(min_deletion_bruteforce(&i.graph, &i.family, Mode::Tm).unwrap().size, 2);
        let i = vc_reduction(&Graph::new(3), &fam("p6")).unwrap();
        assert_eq!(i.graph.n(), 15);
        assert_eq!(min_deletion(&i.graph, &i.family, Mode::Tm).unwrap().size, 0);
    }

    #[test]
    fn empty_instance_counts() {
        let inst = general_construction(&Graph::new(4), 2, &fam("p6"), Completion::Paths).unwrap();
        assert_eq!(inst.budget, 8);
        let choice = 2 * (6 + 5 * 4);
        assert_eq!(inst.graph.n(), 4 + 4 + choice);
        assert!(general_construction(&Graph::new(4), 2, &fam("k4"), Completion::Paths).is_err());
        assert!(general_construction(&Graph::new(4), 2, &fam("p6"), Completion::Kclass).is_err());
    }

    #[test]
    fn sigma_solution_and_permutation_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in ["p6", "p7", "k4", "c5"] {
            let completion = if f.starts_with('p') { Completion::Paths } else { Completion::Kclass };
            let (g, planted) = random_permclique(&mut rng, 2, 0.3);
            let inst = general_construction(&g, 2, &fam(f), completion).unwrap();
            assert!(heuristic_td(&inst.graph).width() <= 12);
            let sigmas = permutation_cliques(&g, 2);
            assert!(sigmas.contains(&planted));
            for sigma in sigmas {
                let s = sigma_solution(&inst, &sigma).unwrap();
                assert_eq!(s.len(), inst.budget);
                let pc = check_permutation_property(&inst, &s).unwrap();
                assert!(pc.holds);
                assert_eq!(pc.sigma.as_deref(), Some(&sigma[..]));
                assert!(verify_solution(&inst.graph, &inst.family, &s, Mode::Tm).unwrap(), "{f}");
                let lay = inst.layout.as_ref().unwrap();
                let e = lay.edges.iter().find(|e| s.contains(&e.dm)).unwrap();
                let short: Vec<usize> = s.iter().copied().filter(|&v| v != e.dm).collect();
                assert!(!verify_solution(&inst.graph, &inst.family, &short, Mode::Tm).unwrap(), "{f}");
                // dropping a non-chosen t-vertex breaks the property
                let e = lay.edges.iter().find(|e| !s.contains(&e.dl)).unwrap();
                let victim = lay.t[e.left.0][1 - e.left.1];
                let s2: Vec<usize> = s.iter().copied().filter(|&v| v != victim).collect();
                assert!(!check_permutation_property(&inst, &s2).unwrap().holds);
            }
            let all: Vec<usize> = (0..inst.graph.n()).collect();
            assert!(check_permutation_property(&inst, &all).unwrap().holds);
        }
    }

    #[test]
    fn non_clique_sigma_is_rejected() {
        let g = Graph::new(4);
        let inst = general_construction(&g, 2, &fam("k4"), Completion::Kclass).unwrap();
        assert!(sigma_solution(&inst, &[0, 1]).is_err());
        assert!(sigma_solution(&inst, &[0, 0]).is_err());
    }
}
