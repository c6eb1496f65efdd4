//! Ground-truth solvers: cardinality-ordered enumeration for small graphs and
//! an exact branching search over forbidden-pattern models for larger ones.

use crate::error::{capability, input, Result};
use crate::family::Family;
use crate::graph::Graph;
use crate::pattern::{find_minor, find_topological_minor, is_minor, is_topological_minor};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tm,
    Minor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionResult {
    pub size: usize,
    pub solution: Vec<usize>,
    pub mode: Mode,
    pub family: String,
}

pub const ORACLE_MAX_N: usize = 14;

fn contains(family: &Family, g: &Graph, mode: Mode) -> Result<bool> {
    for h in &family.members {
        let hit = match mode {
            Mode::Tm => is_topological_minor(h, g)?,
            Mode::Minor => is_minor(h, g)?,
        };
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff no member survives in g - s.
pub fn verify_solution(g: &Graph, family: &Family, s: &[usize], mode: Mode) -> Result<bool> {
    if s.iter().any(|&v| v >= g.n()) {
        return input("solution vertex out of range");
    }
    let (h, _) = g.delete_vertices(s)?;
    Ok(!contains(family, &h, mode)?)
}

/// Exact optimum by increasing cardinality; the witness is the
/// lexicographically least optimal set.
pub fn min_deletion_bruteforce(g: &Graph, family: &Family, mode: Mode) -> Result<DeletionResult> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return capability(format!("brute-force oracle limited to {ORACLE_MAX_N} vertices (got {n})"));
    }
    for k in 0..=n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            if verify_solution(g, family, &comb, mode)? {
                return Ok(DeletionResult { size: k, solution: comb, mode, family: family.name.clone() });
            }
            // next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && comb[i - 1] == n - k + i - 1 {
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
    }
    unreachable!("deleting every vertex always works")
}

fn model_vertices(family: &Family, g: &Graph, mode: Mode) -> Result<Option<Vec<usize>>> {
    let mut best: Option<Vec<usize>> = None;
    for h in &family.members {
        let found = match mode {
            Mode::Tm => find_topological_minor(h, g)?.map(|m| {
                let mut vs = m.branch.clone();
                for (_, p) in &m.paths {
                    vs.extend_from_slice(p);
                }
                vs
            }),
            Mode::Minor => find_minor(h, g)?.map(|m| m.branch_sets.concat()),
        };
        if let Some(mut vs) = found {
            vs.sort_unstable();
            vs.dedup();
            if best.as_ref().map_or(true, |b| vs.len() < b.len()) {
                best = Some(vs);
            }
        }
    }
    Ok(best)
}

struct Brancher<'a> {
    g: &'a Graph,
    family: &'a Family,
    mode: Mode,
    nodes: u64,
}

impl<'a> Brancher<'a> {
    fn search(&mut self, budget: usize, deleted: &mut Vec<usize>, keep: &mut Vec<bool>) -> Result<bool> {
        self.nodes += 1;
        let (h, map) = self.g.delete_vertices(deleted)?;
        let Some(model) = model_vertices(self.family, &h, self.mode)? else {
            return Ok(true);
        };
        if budget == 0 {
            return Ok(false);
        }
        let cands: Vec<usize> = model.iter().map(|&v| map[v]).filter(|&v| !keep[v]).collect();
        let mut pinned = Vec::new();
        let mut found = false;
        for &v in &cands {
            deleted.push(v);
            if self.search(budget - 1, deleted, keep)? {
                found = true;
            }
            deleted.pop();
            if found {
                break;
            }
            // later branches keep v
            keep[v] = true;
            pinned.push(v);
        }
        for v in pinned {
            keep[v] = false;
        }
        Ok(found)
    }
}

/// Exact minimum deletion avoiding `forbidden` vertices, by iterative
/// deepening over branchings on a found model's vertex set. Returns `None`
/// when no solution avoids `forbidden` within `max_budget`.
pub fn min_deletion_branching(
    g: &Graph,
    family: &Family,
    mode: Mode,
    forbidden: &[usize],
    max_budget: usize,
) -> Result<Option<DeletionResult>> {
    let mut keep = vec![false; g.n()];
    for &v in forbidden {
        if v >= g.n() {
            return input("forbidden vertex out of range");
        }
        keep[v] = true;
    }
    let mut b = Brancher { g, family, mode, nodes: 0 };
    for k in 0..=max_budget.min(g.n()) {
        let mut deleted = Vec::new();
        if let Some(sol) = b.search_collect(k, &mut deleted, &mut keep)? {
            let mut solution = sol;
            solution.sort_unstable();
            return Ok(Some(DeletionResult { size: k, solution, mode, family: family.name.clone() }));
        }
    }
    Ok(None)
}

impl<'a> Brancher<'a> {
    fn search_collect(&mut self, budget: usize, deleted: &mut Vec<usize>, keep: &mut Vec<bool>) -> Result<Option<Vec<usize>>> {
        if self.search(budget, deleted, keep)? {
            // replay to recover the set: search leaves `deleted` untouched,
            // so rerun with recording
            let mut rec = Vec::new();
            self.record(budget, &mut rec, keep)?;
            return Ok(Some(rec));
        }
        Ok(None)
    }

    fn record(&mut self, budget: usize, deleted: &mut Vec<usize>, keep: &mut Vec<bool>) -> Result<bool> {
        let (h, map) = self.g.delete_vertices(deleted)?;
        let Some(model) = model_vertices(self.family, &h, self.mode)? else {
            return Ok(true);
        };
        if budget == 0 {
            return Ok(false);
        }
        let cands: Vec<usize> = model.iter().map(|&v| map[v]).filter(|&v| !keep[v]).collect();
        let mut pinned = Vec::new();
        let mut found = false;
        for &v in &cands {
            deleted.push(v);
            if self.record(budget - 1, deleted, keep)? {
                found = true;
                break;
            }
            deleted.pop();
            keep[v] = true;
            pinned.push(v);
        }
        for v in pinned {
            keep[v] = false;
        }
        Ok(found)
    }
}

/// Brute force when small enough, branching otherwise.
pub fn min_deletion(g: &Graph, family: &Family, mode: Mode) -> Result<DeletionResult> {
    if g.n() <= ORACLE_MAX_N {
        return min_deletion_bruteforce(g, family, mode);
    }
    Ok(min_deletion_branching(g, family, mode, &[], g.n())?.expect("deleting everything works"))
}
