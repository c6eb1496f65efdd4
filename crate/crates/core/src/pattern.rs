//! Topological minor and minor containment by backtracking, structural
//! characterisations of P3/P4/C4-free graphs, and tpm.

use crate::boundaried::BoundariedGraph;
use crate::canon::{canonical_code, canonical_graph};
use crate::error::{capability, input, Result};
use crate::graph::Graph;
use std::collections::HashSet;

/// Branch map plus one host path per pattern edge (keyed by (x, y), x < y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoMinorModel {
    pub branch: Vec<usize>,
    pub paths: Vec<((usize, usize), Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Thread {
    a: usize,
    b: usize,
    inner: Vec<usize>,
}

/// Pattern split into anchors (degree >= 3 or pinned), the degree-2 chains
/// between them, chains ending in leaves, and anchor-free components.
#[derive(Clone, Debug)]
struct Plan {
    anchors: Vec<usize>,
    closed_at: Vec<Vec<Thread>>,
    open: Vec<Thread>,
    free_paths: Vec<Vec<usize>>,
    free_cycles: Vec<Vec<usize>>,
}

fn walk(h: &Graph, is_anchor: &[bool], from: usize, first: usize) -> (Vec<usize>, Option<usize>) {
    let mut inner = Vec::new();
    let (mut prev, mut cur) = (from, first);
    loop {
        if is_anchor[cur] {
            return (inner, Some(cur));
        }
        inner.push(cur);
        if h.degree(cur) == 1 {
            return (inner, None);
        }
        let nb = h.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
}

fn plan(h: &Graph, pinned: &[bool]) -> Plan {
    let n = h.n();
    let is_anchor: Vec<bool> = (0..n).map(|v| pinned[v] || h.degree(v) >= 3).collect();
    let mut seen = vec![false; n];
    let mut threads: Vec<Thread> = Vec::new();
    let mut open = Vec::new();
    let mut loops_seen: HashSet<Vec<usize>> = HashSet::new();
    for a in (0..n).filter(|&v| is_anchor[v]) {
        seen[a] = true;
        for &f in h.neighbors(a) {
            let (inner, end) = walk(h, &is_anchor, a, f);
            for &x in &inner {
                seen[x] = true;
            }
            match end {
                None => open.push(Thread { a, b: a, inner }),
                Some(b) if b == a => {
                    let mut key = inner.clone();
                    key.sort_unstable();
                    if loops_seen.insert(key) {
                        threads.push(Thread { a, b, inner });
                    }
                }
                Some(b) => {
                    // record each chain once, from its smaller end
                    let last = *inner.last().unwrap_or(&a);
                    if (a, f) < (b, last) {
                        threads.push(Thread { a, b, inner });
                    }
                }
            }
        }
    }
    let mut free_paths = Vec::new();
    let mut free_cycles = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        if h.degree(s) == 0 {
            seen[s] = true;
            free_paths.push(vec![s]);
            continue;
        }
        if h.degree(s) == 1 {
            let mut seq = vec![s];
            let (mut prev, mut cur) = (s, h.neighbors(s)[0]);
            loop {
                seq.push(cur);
                if h.degree(cur) == 1 {
                    break;
                }
                let nb = h.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            for &x in &seq {
                seen[x] = true;
            }
            free_paths.push(seq);
        }
    }
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // every remaining vertex has degree 2 and lies on a cycle
        let mut cyc = vec![s];
        seen[s] = true;
        let (mut prev, mut cur) = (s, h.neighbors(s)[0]);
        while cur != s {
            cyc.push(cur);
            seen[cur] = true;
            let nb = h.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        free_cycles.push(cyc);
    }
    free_paths.sort_by_key(|p| std::cmp::Reverse(p.len()));
    free_cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));

    // anchor order: pinned first, then greedily most connected to the prefix
    let mut order: Vec<usize> = (0..n).filter(|&v| pinned[v]).collect();
    let mut rest: Vec<usize> = (0..n).filter(|&v| is_anchor[v] && !pinned[v]).collect();
    while !rest.is_empty() {
        let score = |v: usize| {
            threads
                .iter()
                .filter(|t| (t.a == v && order.contains(&t.b)) || (t.b == v && order.contains(&t.a)))
                .count()
        };
        let best = (0..rest.len())
            .max_by(|&i, &j| {
                let (x, y) = (rest[i], rest[j]);
                (score(x), h.degree(x), std::cmp::Reverse(x)).cmp(&(score(y), h.degree(y), std::cmp::Reverse(y)))
            })
            .unwrap();
        order.push(rest.remove(best));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closed_at: Vec<Vec<Thread>> = vec![Vec::new(); order.len()];
    for t in threads {
        let k = pos[t.a].max(pos[t.b]);
        closed_at[k].push(t);
    }
    for list in &mut closed_at {
        list.sort_by_key(|t| t.inner.len());
    }
    Plan { anchors: order, closed_at, open, free_paths, free_cycles }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Item {
    Closed(usize, usize),
    Open(usize),
    FreePath(usize),
    FreeCycle(usize),
}

struct Search<'a> {
    h: &'a Graph,
    g: &'a Graph,
    plan: Plan,
    fixed: &'a [Option<usize>],
    used: Vec<bool>,
    phi: Vec<usize>,
    routes: Vec<(Item, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn place(&mut self, k: usize) -> bool {
        if k == self.plan.anchors.len() {
            return self.route_open(0);
        }
        let x = self.plan.anchors[k];
        if let Some(v) = self.fixed[x] {
            // pinned images are pre-marked as used
            self.phi[x] = v;
            let ok = self.route_closed(k, 0);
            if !ok {
                self.phi[x] = usize::MAX;
            }
            return ok;
        }
        let need = self.h.degree(x);
        for v in 0..self.g.n() {
            if self.used[v] || self.g.degree(v) < need {
                continue;
            }
            self.phi[x] = v;
            self.used[v] = true;
            if self.route_closed(k, 0) {
                return true;
            }
            self.used[v] = false;
            self.phi[x] = usize::MAX;
        }
        false
    }

    fn route_closed(&mut self, k: usize, i: usize) -> bool {
        if i == self.plan.closed_at[k].len() {
            return self.place(k + 1);
        }
        let t = &self.plan.closed_at[k][i];
        let (s, target, need) = (self.phi[t.a], self.phi[t.b], t.inner.len() + 1);
        let is_loop = t.a == t.b;
        let mut path = vec![s];
        self.extend_closed(k, i, &mut path, target, need, is_loop)
    }

    fn extend_closed(&mut self, k: usize, i: usize, path: &mut Vec<usize>, target: usize, need: usize, is_loop: bool) -> bool {
        let g = self.g;
        let x = *path.last().unwrap();
        let idx = path.len();
        let can_close = idx >= need && (!is_loop || idx >= 3);
        if can_close && g.has_edge(x, target) {
            // closing here uses a subset of any longer completion
            let mut route = path.clone();
            route.push(target);
            self.routes.push((Item::Closed(k, i), route));
            if self.route_closed(k, i + 1) {
                return true;
            }
            self.routes.pop();
            return false;
        }
        for &w in g.neighbors(x) {
            if w == target {
                if can_close {
                    let mut route = path.clone();
                    route.push(target);
                    self.routes.push((Item::Closed(k, i), route));
                    if self.route_closed(k, i + 1) {
                        return true;
                    }
                    self.routes.pop();
                }
                continue;
            }
            if self.used[w] {
                continue;
            }
            if !is_loop {
                // a chord back to path[j] gives a shorter path that still has
                // enough length whenever j + 2 >= need
                let lo = need.saturating_sub(2);
                if idx >= 2 && (lo..=idx - 2).any(|j| g.has_edge(w, path[j])) {
                    continue;
                }
            }
            self.used[w] = true;
            path.push(w);
            let ok = self.extend_closed(k, i, path, target, need, is_loop);
            path.pop();
            self.used[w] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn route_open(&mut self, i: usize) -> bool {
        if i == self.plan.open.len() {
            return self.route_free_path(0);
        }
        let t = &self.plan.open[i];
        let mut path = vec![self.phi[t.a]];
        let len = t.inner.len();
        self.extend_exact(&mut path, len + 1, Item::Open(i))
    }

    /// Extends `path` to exactly `total` vertices, then continues with the
    /// item after `item`.
    fn extend_exact(&mut self, path: &mut Vec<usize>, total: usize, item: Item) -> bool {
        if path.len() == total {
            self.routes.push((item, path.clone()));
            let ok = match item {
                Item::Open(i) => self.route_open(i + 1),
                Item::FreePath(i) => self.route_free_path(i + 1),
                _ => unreachable!(),
            };
            if !ok {
                self.routes.pop();
            }
            return ok;
        }
        let g = self.g;
        let x = *path.last().unwrap();
        for &w in g.neighbors(x) {
            if self.used[w] {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            let ok = self.extend_exact(path, total, item);
            path.pop();
            self.used[w] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn route_free_path(&mut self, i: usize) -> bool {
        if i == self.plan.free_paths.len() {
            return self.route_free_cycle(0);
        }
        let len = self.plan.free_paths[i].len();
        for s in 0..self.g.n() {
            if self.used[s] {
                continue;
            }
            self.used[s] = true;
            let mut path = vec![s];
            let ok = self.extend_exact(&mut path, len, Item::FreePath(i));
            self.used[s] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn route_free_cycle(&mut self, i: usize) -> bool {
        if i == self.plan.free_cycles.len() {
            return true;
        }
        let len = self.plan.free_cycles[i].len();
        for s in 0..self.g.n() {
            if self.used[s] {
                continue;
            }
            self.used[s] = true;
            let mut path = vec![s];
            let ok = self.extend_cycle(i, &mut path, len);
            self.used[s] = false;
            if ok {
                return true;
            }
        }
        false
    }

    /// Cycle through path[0] using only larger ids (path[0] is the minimum).
    fn extend_cycle(&mut self, i: usize, path: &mut Vec<usize>, len: usize) -> bool {
        let g = self.g;
        let s = path[0];
        let x = *path.last().unwrap();
        let idx = path.len();
        if idx >= len && idx >= 3 && g.has_edge(x, s) {
            self.routes.push((Item::FreeCycle(i), path.clone()));
            if self.route_free_cycle(i + 1) {
                return true;
            }
            self.routes.pop();
            // any longer cycle through x is dominated by closing here
            return false;
        }
        for &w in g.neighbors(x) {
            if w <= s || self.used[w] {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            let ok = self.extend_cycle(i, path, len);
            path.pop();
            self.used[w] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn model(&self) -> TopoMinorModel {
        let h = self.h;
        let mut branch = self.phi.clone();
        let mut paths: Vec<((usize, usize), Vec<usize>)> = Vec::new();
        let mut push = |x: usize, y: usize, p: Vec<usize>| {
            if x < y {
                paths.push(((x, y), p));
            } else {
                let mut p = p;
                p.reverse();
                paths.push(((y, x), p));
            }
        };
        for (item, route) in &self.routes {
            match *item {
                Item::Closed(k, i) => {
                    let t = &self.plan.closed_at[k][i];
                    let mut seq = vec![t.a];
                    seq.extend(&t.inner);
                    seq.push(t.b);
                    let c = t.inner.len();
                    for (j, &p) in t.inner.iter().enumerate() {
                        branch[p] = route[j + 1];
                    }
                    for j in 0..c {
                        push(seq[j], seq[j + 1], vec![route[j], route[j + 1]]);
                    }
                    push(seq[c], seq[c + 1], route[c..].to_vec());
                }
                Item::Open(i) => {
                    let t = &self.plan.open[i];
                    let mut seq = vec![t.a];
                    seq.extend(&t.inner);
                    for (j, &p) in seq.iter().enumerate() {
                        branch[p] = route[j];
                    }
                    for j in 0..seq.len() - 1 {
                        push(seq[j], seq[j + 1], vec![route[j], route[j + 1]]);
                    }
                }
                Item::FreePath(i) => {
                    let seq = &self.plan.free_paths[i];
                    for (j, &p) in seq.iter().enumerate() {
                        branch[p] = route[j];
                    }
                    for j in 0..seq.len().saturating_sub(1) {
                        push(seq[j], seq[j + 1], vec![route[j], route[j + 1]]);
                    }
                }
                Item::FreeCycle(i) => {
                    let seq = &self.plan.free_cycles[i];
                    let c = seq.len();
                    for (j, &p) in seq.iter().enumerate() {
                        branch[p] = route[j];
                    }
                    for j in 0..c - 1 {
                        push(seq[j], seq[j + 1], vec![route[j], route[j + 1]]);
                    }
                    let mut tail = route[c - 1..].to_vec();
                    tail.push(route[0]);
                    push(seq[c - 1], seq[0], tail);
                }
            }
        }
        paths.sort();
        debug_assert_eq!(paths.len(), h.m());
        TopoMinorModel { branch, paths }
    }
}

fn degree_prefilter(h: &Graph, g: &Graph) -> bool {
    if h.n() > g.n() || h.m() > g.m() {
        return false;
    }
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    dh.sort_unstable_by(|a, b| b.cmp(a));
    dg.sort_unstable_by(|a, b| b.cmp(a));
    // branch vertices of degree >= 3 need distinct hosts of at least that degree
    dh.iter().zip(&dg).all(|(a, b)| *a < 3 || a <= b)
}

/// Core search with pinned images and unusable host vertices.
fn search_tm(h: &Graph, g: &Graph, fixed: &[Option<usize>], blocked: &[bool]) -> Option<TopoMinorModel> {
    let pinned: Vec<bool> = fixed.iter().map(Option::is_some).collect();
    let plan = plan(h, &pinned);
    let mut used = blocked.to_vec();
    for v in fixed.iter().flatten() {
        used[*v] = true;
    }
    let mut s = Search { h, g, plan, fixed, used, phi: vec![usize::MAX; h.n()], routes: Vec::new() };
    if s.place(0) {
        Some(s.model())
    } else {
        None
    }
}

fn lift(model: TopoMinorModel, map: &[usize]) -> TopoMinorModel {
    TopoMinorModel {
        branch: model.branch.iter().map(|&v| map[v]).collect(),
        paths: model.paths.into_iter().map(|(e, p)| (e, p.iter().map(|&v| map[v]).collect())).collect(),
    }
}

fn is_biconnected(h: &Graph) -> bool {
    h.n() >= 3 && h.is_connected() && h.block_cut_tree().blocks.len() == 1
}

/// Topological minor test returning a model when one exists.
pub fn find_topological_minor(h: &Graph, g: &Graph) -> Result<Option<TopoMinorModel>> {
    if h.n() == 0 {
        return input("empty pattern");
    }
    if !degree_prefilter(h, g) {
        return Ok(None);
    }
    let none = |n: usize| (vec![None; h.n()], vec![false; n]);
    if h.is_connected() {
        let parts = if is_biconnected(h) { g.block_cut_tree().blocks } else { g.connected_components() };
        for part in parts {
            if part.len() < h.n() {
                continue;
            }
            let (sub, map) = g.induced_subgraph(&part)?;
            if !degree_prefilter(h, &sub) {
                continue;
            }
            let (fixed, blocked) = none(sub.n());
            if let Some(m) = search_tm(h, &sub, &fixed, &blocked) {
                return Ok(Some(lift(m, &map)));
            }
        }
        return Ok(None);
    }
    let (fixed, blocked) = none(g.n());
    Ok(search_tm(h, g, &fixed, &blocked))
}

pub fn is_topological_minor(h: &Graph, g: &Graph) -> Result<bool> {
    Ok(find_topological_minor(h, g)?.is_some())
}

/// Rooted containment: boundary vertices of `hb` go to the equally labelled
/// boundary vertices of `gb`; the remaining boundary vertices of `gb` are not
/// used at all.
pub fn find_rooted_topological_minor(hb: &BoundariedGraph, gb: &BoundariedGraph) -> Option<TopoMinorModel> {
    let (h, g) = (&hb.graph, &gb.graph);
    if h.n() > g.n() || h.m() > g.m() {
        return None;
    }
    let mut fixed = vec![None; h.n()];
    let mut blocked = vec![false; g.n()];
    for v in 0..g.n() {
        if let Some(l) = gb.labels[v] {
            blocked[v] = !hb.has_label(l);
        }
    }
    for x in 0..h.n() {
        if let Some(l) = hb.labels[x] {
            let v = gb.vertex_with_label(l)?;
            if g.degree(v) < h.degree(x) {
                return None;
            }
            fixed[x] = Some(v);
        }
    }
    search_tm(h, g, &fixed, &blocked)
}

pub fn is_rooted_topological_minor(hb: &BoundariedGraph, gb: &BoundariedGraph) -> bool {
    find_rooted_topological_minor(hb, gb).is_some()
}

/// Checks a topological minor model against the definition.
pub fn check_tm_model(h: &Graph, g: &Graph, model: &TopoMinorModel) -> bool {
    if model.branch.len() != h.n() || model.paths.len() != h.m() {
        return false;
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (x, &v) in model.branch.iter().enumerate() {
        if v >= g.n() || owner[v] != usize::MAX {
            return false;
        }
        owner[v] = x;
    }
    let mut edges = h.edges();
    edges.sort();
    let mut keys: Vec<(usize, usize)> = model.paths.iter().map(|(e, _)| *e).collect();
    keys.sort();
    if keys != edges {
        return false;
    }
    let mut internal = vec![false; g.n()];
    for ((x, y), p) in &model.paths {
        if p.len() < 2 || p[0] != model.branch[*x] || *p.last().unwrap() != model.branch[*y] {
            return false;
        }
        if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        for &v in &p[1..p.len() - 1] {
            if owner[v] != usize::MAX || internal[v] {
                return false;
            }
            internal[v] = true;
        }
    }
    true
}

/// Minor test by enumerating branch-set assignments (restricted growth
/// strings with an "unused" option). Exponential; meant for small hosts.
pub fn find_minor(h: &Graph, g: &Graph) -> Result<Option<MinorModel>> {
    if h.n() == 0 {
        return input("empty pattern");
    }
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(None);
    }
    if h.is_connected() {
        for comp in g.connected_components() {
            if comp.len() < h.n() {
                continue;
            }
            let (sub, map) = g.induced_subgraph(&comp)?;
            if let Some(m) = minor_search(h, &sub) {
                let branch_sets = m.branch_sets.into_iter().map(|s| s.into_iter().map(|v| map[v]).collect()).collect();
                return Ok(Some(MinorModel { branch_sets }));
            }
        }
        return Ok(None);
    }
    Ok(minor_search(h, g))
}

pub fn is_minor(h: &Graph, g: &Graph) -> Result<bool> {
    Ok(find_minor(h, g)?.is_some())
}

struct MinorSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    assign: Vec<usize>,
    blocks: usize,
    result: Option<MinorModel>,
}

const UNUSED: usize = usize::MAX;

impl<'a> MinorSearch<'a> {
    fn go(&mut self, v: usize) -> bool {
        let (n, k) = (self.g.n(), self.h.n());
        if self.blocks + (n - v) < k {
            return false;
        }
        if v == n {
            return self.check_leaf();
        }
        self.assign[v] = UNUSED;
        if self.go(v + 1) {
            return true;
        }
        let top = (self.blocks + 1).min(k);
        for b in 0..top {
            self.assign[v] = b;
            let fresh = b == self.blocks;
            if fresh {
                self.blocks += 1;
            }
            let ok = self.go(v + 1);
            if fresh {
                self.blocks -= 1;
            }
            if ok {
                return true;
            }
        }
        self.assign[v] = UNUSED;
        false
    }

    fn check_leaf(&mut self) -> bool {
        let k = self.h.n();
        if self.blocks != k {
            return false;
        }
        let g = self.g;
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 0..g.n() {
            if self.assign[v] != UNUSED {
                sets[self.assign[v]].push(v);
            }
        }
        for s in &sets {
            let (sub, _) = g.induced_subgraph(s).unwrap();
            if !sub.is_connected() {
                return false;
            }
        }
        let mut quot = vec![vec![false; k]; k];
        for (u, v) in g.edges() {
            let (a, b) = (self.assign[u], self.assign[v]);
            if a != UNUSED && b != UNUSED && a != b {
                quot[a][b] = true;
                quot[b][a] = true;
            }
        }
        let mut perm = vec![usize::MAX; k];
        let mut taken = vec![false; k];
        if self.embed(0, &quot, &mut perm, &mut taken) {
            // perm maps pattern vertex -> block
            self.result = Some(MinorModel { branch_sets: perm.iter().map(|&b| sets[b].clone()).collect() });
            return true;
        }
        false
    }

    fn embed(&self, x: usize, quot: &[Vec<bool>], perm: &mut Vec<usize>, taken: &mut Vec<bool>) -> bool {
        let k = self.h.n();
        if x == k {
            return true;
        }
        for b in 0..k {
            if taken[b] {
                continue;
            }
            if self.h.neighbors(x).iter().any(|&y| y < x && !quot[perm[y]][b]) {
                continue;
            }
            perm[x] = b;
            taken[b] = true;
            if self.embed(x + 1, quot, perm, taken) {
                return true;
            }
            taken[b] = false;
        }
        perm[x] = usize::MAX;
        false
    }
}

fn minor_search(h: &Graph, g: &Graph) -> Option<MinorModel> {
    let mut s = MinorSearch { h, g, assign: vec![UNUSED; g.n()], blocks: 0, result: None };
    s.go(0);
    s.result
}

pub fn check_minor_model(h: &Graph, g: &Graph, model: &MinorModel) -> bool {
    if model.branch_sets.len() != h.n() {
        return false;
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (x, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return false;
        }
        for &v in set {
            if v >= g.n() || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = x;
        }
        match g.induced_subgraph(set) {
            Ok((sub, _)) if sub.is_connected() => {}
            _ => return false,
        }
    }
    h.edges().into_iter().all(|(x, y)| {
        model.branch_sets[x].iter().any(|&u| g.neighbors(u).iter().any(|&v| owner[v] == y))
    })
}

pub fn contains_family_tm(family: &[Graph], g: &Graph) -> Result<bool> {
    if family.is_empty() {
        return input("empty family");
    }
    for h in family {
        if is_topological_minor(h, g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn contains_family_minor(family: &[Graph], g: &Graph) -> Result<bool> {
    if family.is_empty() {
        return input("empty family");
    }
    for h in family {
        if is_minor(h, g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Maximum degree at most one.
pub fn is_p3_free(g: &Graph) -> bool {
    g.max_degree() <= 1
}

/// Every component is a triangle or a star.
pub fn is_p4_free(g: &Graph) -> bool {
    g.connected_components().into_iter().all(|c| {
        let m: usize = c.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let triangle = c.len() == 3 && m == 3;
        let star = m + 1 == c.len() && (c.len() <= 2 || c.iter().any(|&v| g.degree(v) == m));
        triangle || star
    })
}

/// No diamond subgraph and n - m + c3 = cc.
pub fn c4_condition(g: &Graph) -> bool {
    if g.contains_diamond() {
        return false;
    }
    let lhs = g.n() as i64 - g.m() as i64 + g.count_triangles() as i64;
    lhs == g.connected_components().len() as i64
}

pub const TPM_MAX_HIGH_DEGREE: usize = 6;

/// Topological-minor-minimal graphs containing `h` as a minor, obtained by
/// closing under splits of vertices of degree >= 4.
pub fn tpm(h: &Graph) -> Result<Vec<Graph>> {
    let high = (0..h.n()).filter(|&v| h.degree(v) >= 4).count();
    if high > TPM_MAX_HIGH_DEGREE {
        return capability(format!("tpm: {high} vertices of degree >= 4 (limit {TPM_MAX_HIGH_DEGREE})"));
    }
    let start = canonical_graph(h);
    let mut seen = HashSet::new();
    seen.insert(canonical_code(&start));
    let mut all = vec![start.clone()];
    let mut queue = vec![start];
    while let Some(g) = queue.pop() {
        for v in 0..g.n() {
            let nb = g.neighbors(v).to_vec();
            let d = nb.len();
            if d < 4 {
                continue;
            }
            // the side holding nb[0] ranges over subsets containing it
            for mask in 0u32..1 << d {
                if mask & 1 == 0 {
                    continue;
                }
                let side = mask.count_ones() as usize;
                if side < 2 || d - side < 2 {
                    continue;
                }
                let mut s = g.clone();
                for &u in &nb {
                    s.remove_edge(v, u);
                }
                let w = s.add_vertex();
                s.add_edge(v, w);
                for (i, &u) in nb.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.add_edge(v, u);
                    } else {
                        s.add_edge(w, u);
                    }
                }
                let s = canonical_graph(&s);
                if seen.insert(canonical_code(&s)) {
                    all.push(s.clone());
                    queue.push(s);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, g) in all.iter().enumerate() {
        let mut minimal = true;
        for (j, f) in all.iter().enumerate() {
            if i != j && f.n() <= g.n() && is_topological_minor(f, g)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(g.clone());
        }
    }
    out.sort_by_key(|g| (g.n(), g.m(), canonical_code(g)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{all_graphs, is_isomorphic};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: minor models by brute force over branch-set
    /// assignments, with tm obtained by requiring the contracted structure
    /// to be a subdivision. Here: tm via exhaustive subgraph + smoothing.
    fn brute_tm(h: &Graph, g: &Graph) -> bool {
        // G contains H as tm iff some subgraph of G, after suppressing
        // degree-2 vertices, is isomorphic to H. We enumerate edge subsets
        // of G for tiny hosts.
        let edges = g.edges();
        let target = canonical_code(&canonical_graph(h));
        for mask in 0u64..1 << edges.len() {
            if (mask.count_ones() as usize) < h.m() {
                continue;
            }
            let chosen: Vec<(usize, usize)> =
                edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let sub = Graph::from_edges(g.n(), &chosen).unwrap();
            if smoothings_match(&sub, h, &target) {
                return true;
            }
        }
        false
    }

    /// Does some subgraph obtained by deleting isolated vertices and
    /// suppressing some degree-2 vertices equal H? Try all subsets of
    /// vertices to keep as branch vertices.
    fn smoothings_match(sub: &Graph, h: &Graph, target: &crate::canon::CanonCode) -> bool {
        let n = sub.n();
        let nonisolated: Vec<usize> = (0..n).filter(|&v| sub.degree(v) > 0).collect();
        let isolated_h = (0..h.n()).filter(|&v| h.degree(v) == 0).count();
        let isolated_g = n - nonisolated.len();
        let _ = isolated_g;
        // choose which degree-2 vertices to suppress
        let deg2: Vec<usize> = nonisolated.iter().copied().filter(|&v| sub.degree(v) == 2).collect();
        for mask in 0u64..1 << deg2.len() {
            let mut s = sub.clone();
            let mut ok = true;
            let mut removed = vec![false; n];
            for (i, &v) in deg2.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let nb = s.neighbors(v).to_vec();
                if nb.len() != 2 || s.has_edge(nb[0], nb[1]) {
                    ok = false;
                    break;
                }
                s.remove_edge(v, nb[0]);
                s.remove_edge(v, nb[1]);
                s.add_edge(nb[0], nb[1]);
                removed[v] = true;
            }
            if !ok {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&v| !removed[v] && s.degree(v) > 0).collect();
            let non_iso_h = h.n() - isolated_h;
            if keep.len() != non_iso_h || n - keep.len() - removed.iter().filter(|&&r| r).count() < isolated_h {
                continue;
            }
            let (k, _) = s.induced_subgraph(&keep).unwrap();
            let mut k = k;
            for _ in 0..isolated_h {
                k.add_vertex();
            }
            if canonical_code(&canonical_graph(&k)) == *target {
                return true;
            }
        }
        false
    }

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

    #[test]
    fn tm_examples() {
        assert!(is_topological_minor(&Graph::cycle(4), &Graph::complete(4)).unwrap());
        assert!(is_topological_minor(&Graph::complete(4), &Graph::complete(4)).unwrap());
        assert!(!is_topological_minor(&Graph::path(3), &Graph::path(2)).unwrap());
        assert!(is_topological_minor(&Graph::new(0), &Graph::path(2)).is_err());
    }

    #[test]
    fn minor_examples() {
        let mut sub = Graph::new(4);
        for (u, v) in Graph::complete(4).edges() {
            let w = sub.add_vertex();
            sub.add_edge(u, w);
            sub.add_edge(w, v);
        }
        assert!(is_minor(&Graph::complete(4), &sub).unwrap());
        assert!(!is_minor(&Graph::cycle(4), &Graph::cycle(3)).unwrap());
        assert!(!is_minor(&Graph::complete(3), &Graph::star(5)).unwrap());
        // K_{1,4} is a minor but not a topological minor of the 6-vertex tree
        let mut t = Graph::new(6);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)] {
            t.add_edge(u, v);
        }
        assert!(is_minor(&Graph::star(4), &t).unwrap());
        assert!(!is_topological_minor(&Graph::star(4), &t).unwrap());
    }

    #[test]
    fn family_examples() {
        let k33 = Graph::complete_bipartite(3, 3);
        assert!(contains_family_tm(&[Graph::complete(5), k33], &Graph::complete(5)).unwrap());
        assert!(!contains_family_tm(&[Graph::cycle(4)], &Graph::star(6)).unwrap());
        assert!(contains_family_tm(&[Graph::path(6)], &Graph::cycle(6)).unwrap());
        assert!(contains_family_tm(&[], &Graph::cycle(6)).is_err());
    }

    #[test]
    fn structural_examples() {
        let matching = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(is_p3_free(&matching));
        assert!(is_p4_free(&Graph::complete(3).disjoint_union(&Graph::star(5))));
        assert!(c4_condition(&Graph::complete(3)));
        assert!(!c4_condition(&Graph::cycle(4)));
    }

    #[test]
    fn tm_agrees_with_subgraph_smoothing_oracle() {
        let patterns = [
            Graph::path(3),
            Graph::path(4),
            Graph::cycle(3),
            Graph::cycle(4),
            Graph::star(3),
            Graph::complete(4),
            Graph::diamond(),
            Graph::path(2).disjoint_union(&Graph::path(2)),
            Graph::cycle(3).disjoint_union(&Graph::new(1)),
        ];
        for g in all_graphs(5) {
            for h in &patterns {
                let got = find_topological_minor(h, &g).unwrap();
                assert_eq!(got.is_some(), brute_tm(h, &g), "h={:?} g={:?}", h.edges(), g.edges());
                if let Some(m) = got {
                    assert!(check_tm_model(h, &g, &m));
                }
            }
        }
    }

    #[test]
    fn tm_implies_minor_and_subcubic_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let (hn, gn) = (rng.gen_range(2..=5), rng.gen_range(3..=8));
            let h = random_graph(&mut rng, hn, 0.5);
            let g = random_graph(&mut rng, gn, 0.4);
            if h.m() == 0 {
                continue;
            }
            let tm = find_topological_minor(&h, &g).unwrap();
            let mm = find_minor(&h, &g).unwrap();
            if let Some(m) = &tm {
                assert!(check_tm_model(&h, &g, m));
                assert!(mm.is_some());
            }
            if let Some(m) = &mm {
                assert!(check_minor_model(&h, &g, m));
            }
            if h.max_degree() <= 3 {
                assert_eq!(tm.is_some(), mm.is_some(), "h={:?} g={:?}", h.edges(), g.edges());
            }
        }
    }

    #[test]
    fn characterisations_match_tm_up_to_seven() {
        let (p3, p4, c4) = (Graph::path(3), Graph::path(4), Graph::cycle(4));
        for n in 0..=7 {
            for g in all_graphs(n) {
                assert_eq!(is_p3_free(&g), !is_topological_minor(&p3, &g).unwrap());
                assert_eq!(is_p4_free(&g), !is_topological_minor(&p4, &g).unwrap());
                assert_eq!(c4_condition(&g), !is_topological_minor(&c4, &g).unwrap(), "{:?}", g.edges());
            }
        }
    }

    #[test]
    fn characterisations_random_nine() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let p = rng.gen_range(0.1..0.5);
            let g = random_graph(&mut rng, 9, p);
            assert_eq!(c4_condition(&g), !is_topological_minor(&Graph::cycle(4), &g).unwrap());
            assert_eq!(is_p4_free(&g), !is_topological_minor(&Graph::path(4), &g).unwrap());
        }
    }

    #[test]
    fn tpm_examples() {
        assert!(is_isomorphic(&tpm(&Graph::path(4)).unwrap()[0], &Graph::path(4)));
        assert_eq!(tpm(&Graph::cycle(5)).unwrap().len(), 1);
        let t = tpm(&Graph::star(4)).unwrap();
        assert_eq!(t.len(), 2);
        assert!(is_isomorphic(&t[0], &Graph::star(4)));
        let two_centres = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert!(is_isomorphic(&t[1], &two_centres));
        assert_eq!(tpm(&Graph::complete(4)).unwrap().len(), 1);
        assert!(matches!(tpm(&Graph::complete(8)), Err(crate::Error::Capability(_))));
    }

    #[test]
    fn tpm_translates_minor_to_tm() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = Graph::star(4);
        let t = tpm(&h).unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(5..=8);
            let g = random_graph(&mut rng, n, 0.35);
            let minor = is_minor(&h, &g).unwrap();
            let tm = contains_family_tm(&t, &g).unwrap();
            assert_eq!(minor, tm);
        }
    }

    #[test]
    fn rooted_examples() {
        let one = BoundariedGraph::new(Graph::new(1), vec![Some(1)]).unwrap();
        assert!(is_rooted_topological_minor(&one, &one));
        let edge = BoundariedGraph::new(Graph::path(2), vec![Some(1), Some(2)]).unwrap();
        let p3 = BoundariedGraph::new(Graph::path(3), vec![Some(1), None, Some(2)]).unwrap();
        assert!(is_rooted_topological_minor(&edge, &p3));
        let two = BoundariedGraph::new(Graph::new(2), vec![Some(1), Some(2)]).unwrap();
        assert!(!is_rooted_topological_minor(&edge, &two));
    }

    #[test]
    fn rooted_blocks_other_boundary_vertices() {
        // path 1 - b - 2 where b is boundary with label 3: route blocked
        let host = BoundariedGraph::new(Graph::path(3), vec![Some(1), Some(3), Some(2)]).unwrap();
        let edge = BoundariedGraph::new(Graph::path(2), vec![Some(1), Some(2)]).unwrap();
        assert!(!is_rooted_topological_minor(&edge, &host));
    }
}
