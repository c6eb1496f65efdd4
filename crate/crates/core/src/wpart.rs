//! Weighted partitions over small universes: lattice operations, the set
//! operations used by connectivity DPs, and rank-based reduction.

use crate::error::{capability, input, Result};
use num_traits::{PrimInt, Unsigned};
use std::fmt::Debug;
use std::hash::Hash;

/// Canonical block-index vector: entry i is the block of the i-th universe
/// element, blocks numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    label: Vec<u8>,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map: Vec<(usize, u8)> = Vec::new();
        let mut label = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, id)) => id,
                None => {
                    let id = map.len() as u8;
                    map.push((l, id));
                    id
                }
            };
            label.push(id);
        }
        Partition { label }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut lab = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                if i >= n || lab[i] != usize::MAX {
                    return input("blocks must partition the universe");
                }
                lab[i] = b;
            }
        }
        if lab.contains(&usize::MAX) {
            return input("blocks must cover the universe");
        }
        Ok(Partition::from_labels(&lab))
    }

    pub fn singletons(n: usize) -> Self {
        Partition { label: (0..n as u8).collect() }
    }

    pub fn whole(n: usize) -> Self {
        Partition { label: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.label.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.label[i] as usize
    }

    pub fn labels(&self) -> &[u8] {
        &self.label
    }

    /// Blocks as sorted position lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.label.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    p[x] = r;
    r
}

/// Finest common coarsening: blocks are components of the union relation.
pub fn meet(p: &Partition, q: &Partition) -> Partition {
    assert_eq!(p.len(), q.len(), "meet over different universes");
    let n = p.len();
    let mut dsu: Vec<usize> = (0..n).collect();
    for part in [p, q] {
        let mut first = [usize::MAX; 256];
        for i in 0..n {
            let b = part.label[i] as usize;
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                let (a, c) = (find(&mut dsu, first[b]), find(&mut dsu, i));
                dsu[a] = c;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut dsu, i)).collect();
    Partition::from_labels(&roots)
}

/// True iff every block of `p` lies inside a block of `q` (p is finer).
pub fn refines(p: &Partition, q: &Partition) -> bool {
    assert_eq!(p.len(), q.len());
    let mut img = [u8::MAX; 256];
    for i in 0..p.len() {
        let b = p.label[i] as usize;
        if img[b] == u8::MAX {
            img[b] = q.label[i];
        } else if img[b] != q.label[i] {
            return false;
        }
    }
    true
}

fn positions(universe: &[usize], x: &[usize]) -> Option<Vec<usize>> {
    x.iter().map(|v| universe.binary_search(v).ok()).collect()
}

/// Restriction to X ⊆ U (result indexed over sorted X).
pub fn down(p: &Partition, universe: &[usize], x: &[usize]) -> Result<Partition> {
    let pos = positions(universe, x).ok_or_else(|| crate::Error::Input("down: X not inside U".into()))?;
    Ok(Partition::from_labels(&pos.iter().map(|&i| p.label[i] as usize).collect::<Vec<_>>()))
}

/// Extension to X ⊇ U with singletons for the new elements.
pub fn up(p: &Partition, universe: &[usize], x: &[usize]) -> Result<Partition> {
    let mut labs = Vec::with_capacity(x.len());
    let mut fresh = 256usize;
    for v in x {
        match universe.binary_search(v) {
            Ok(i) => labs.push(p.label[i] as usize),
            Err(_) => {
                labs.push(fresh);
                fresh += 1;
            }
        }
    }
    if labs.len() - (fresh - 256) != universe.len() {
        return input("up: U not inside X");
    }
    Ok(Partition::from_labels(&labs))
}

/// U[S]: S as one block, everything else singleton.
pub fn singleton_merge(universe: &[usize], s: &[usize]) -> Result<Partition> {
    let pos = positions(universe, s).ok_or_else(|| crate::Error::Input("singleton_merge: S not inside U".into()))?;
    let mut labs: Vec<usize> = (0..universe.len()).collect();
    if let Some(&first) = pos.first() {
        for &i in &pos {
            labs[i] = first;
        }
    }
    Ok(Partition::from_labels(&labs))
}

/// All partitions of an n-element universe (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fn rec(i: usize, maxb: u8, cur: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            out.push(Partition { label: cur.clone() });
            return;
        }
        for b in 0..=maxb {
            cur[i] = b;
            rec(i + 1, if b == maxb { maxb + 1 } else { maxb }, cur, out);
        }
    }
    if n == 0 {
        return vec![Partition { label: Vec::new() }];
    }
    rec(1, 1, &mut cur, &mut out);
    out
}

pub const DEFAULT_REDUCE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPartitionSet<W> {
    universe: Vec<usize>,
    entries: Vec<(Partition, W)>,
}

fn sorted_unique(x: &[usize]) -> Vec<usize> {
    let mut v = x.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

impl<W> WeightedPartitionSet<W>
where
    W: PrimInt + Unsigned + Hash + Debug,
{
    pub fn empty(universe: &[usize]) -> Self {
        WeightedPartitionSet { universe: sorted_unique(universe), entries: Vec::new() }
    }

    /// Builds and rmc-normalises.
    pub fn from_entries(universe: &[usize], entries: Vec<(Partition, W)>) -> Result<Self> {
        let universe = sorted_unique(universe);
        if entries.iter().any(|(p, _)| p.len() != universe.len()) {
            return input("partition size differs from universe size");
        }
        let mut s = WeightedPartitionSet { universe, entries };
        s.normalize();
        Ok(s)
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn entries(&self) -> &[(Partition, W)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_weight(&self) -> Option<W> {
        self.entries.iter().map(|e| e.1).min()
    }

    /// rmc: one entry per partition, carrying the least weight.
    fn normalize(&mut self) {
        self.entries.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        self.entries.dedup_by(|a, b| a.0 == b.0);
    }

    pub fn rmc(&self) -> Self {
        let mut s = self.clone();
        s.normalize();
        s
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Partition, W) -> bool) {
        self.entries.retain(|(p, w)| keep(p, *w));
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return input("union over different universes");
        }
        let mut s = self.clone();
        s.entries.extend(other.entries.iter().cloned());
        s.normalize();
        Ok(s)
    }

    /// Adds the elements of X (disjoint from U) as singletons.
    pub fn ins(&self, x: &[usize]) -> Result<Self> {
        if x.iter().any(|v| self.universe.binary_search(v).is_ok()) {
            return input("ins: X meets U");
        }
        let mut uni = self.universe.clone();
        uni.extend_from_slice(x);
        let uni = sorted_unique(&uni);
        let mut entries = Vec::with_capacity(self.entries.len());
        for (p, w) in &self.entries {
            entries.push((up(p, &self.universe, &uni)?, *w));
        }
        Self::from_entries(&uni, entries)
    }

    pub fn shft(&self, w: W) -> Self {
        let entries = self.entries.iter().map(|(p, x)| (p.clone(), x.saturating_add(w))).collect();
        WeightedPartitionSet { universe: self.universe.clone(), entries }
    }

    /// Merges the blocks meeting S into one (S may extend the universe).
    pub fn glue(&self, s: &[usize]) -> Result<Self> {
        let mut uni = self.universe.clone();
        uni.extend_from_slice(s);
        let uni = sorted_unique(&uni);
        let us = singleton_merge(&uni, &sorted_unique(s))?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (p, w) in &self.entries {
            entries.push((meet(&us, &up(p, &self.universe, &uni)?), *w));
        }
        Self::from_entries(&uni, entries)
    }

    pub fn glue_w(&self, s: &[usize], w: W) -> Result<Self> {
        Ok(self.glue(s)?.shft(w))
    }

    /// Drops X from the universe, keeping partitions in which every element
    /// of X shares a block with some remaining element. With nothing
    /// remaining, only single-block partitions survive.
    pub fn proj(&self, x: &[usize]) -> Result<Self> {
        let x = sorted_unique(x);
        let xpos = positions(&self.universe, &x).ok_or_else(|| crate::Error::Input("proj: X not inside U".into()))?;
        let rest: Vec<usize> = self.universe.iter().copied().filter(|v| x.binary_search(v).is_err()).collect();
        let rest_pos = positions(&self.universe, &rest).unwrap();
        let mut entries = Vec::new();
        for (p, w) in &self.entries {
            let keep = if rest.is_empty() {
                p.num_blocks() <= 1
            } else {
                xpos.iter().all(|&i| rest_pos.iter().any(|&j| p.label[j] == p.label[i]))
            };
            if keep {
                entries.push((down(p, &self.universe, &rest)?, *w));
            }
        }
        Self::from_entries(&rest, entries)
    }

    /// Pairwise meets over the union universe, weights added.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let mut uni = self.universe.clone();
        uni.extend_from_slice(&other.universe);
        let uni = sorted_unique(&uni);
        let lifted_a: Vec<(Partition, W)> =
            self.entries.iter().map(|(p, w)| Ok((up(p, &self.universe, &uni)?, *w))).collect::<Result<_>>()?;
        let lifted_b: Vec<(Partition, W)> =
            other.entries.iter().map(|(p, w)| Ok((up(p, &other.universe, &uni)?, *w))).collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(lifted_a.len() * lifted_b.len());
        for (p, w1) in &lifted_a {
            for (q, w2) in &lifted_b {
                entries.push((meet(p, q), w1.saturating_add(*w2)));
            }
        }
        Self::from_entries(&uni, entries)
    }

    /// Least weight of an entry whose meet with q is a single block.
    pub fn opt(&self, q: &Partition) -> Option<W> {
        self.entries.iter().filter(|(p, _)| meet(p, q).num_blocks() <= 1).map(|e| e.1).min()
    }

    /// Representative subset via the cut matrix over GF(2): rows sorted by
    /// weight, independent rows kept.
    pub fn reduce(&self) -> Result<Self> {
        self.reduce_with_limit(DEFAULT_REDUCE_LIMIT)
    }

    pub fn reduce_with_limit(&self, limit: usize) -> Result<Self> {
        let n = self.universe.len();
        if n > limit {
            return capability(format!("reduce over universe of size {n} (limit {limit})"));
        }
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        if n <= 1 {
            sorted.truncate(1);
            return Ok(WeightedPartitionSet { universe: self.universe.clone(), entries: sorted });
        }
        let cols = 1usize << (n - 1);
        let words = cols.div_ceil(64);
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut kept = Vec::new();
        for (p, w) in sorted {
            let mut row = vec![0u64; words];
            for cut in 0..cols {
                // element 0 on side 0; element i >= 1 on side bit (i - 1)
                let side = |i: usize| if i == 0 { 0 } else { (cut >> (i - 1)) & 1 };
                let mut side_of = [usize::MAX; 256];
                let mut ok = true;
                for i in 0..n {
                    let b = p.label[i] as usize;
                    let s = side(i);
                    if side_of[b] == usize::MAX {
                        side_of[b] = s;
                    } else if side_of[b] != s {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    row[cut / 64] |= 1 << (cut % 64);
                }
            }
            let mut r = row;
            for (piv, b) in &basis {
                if r[piv / 64] >> (piv % 64) & 1 == 1 {
                    for (x, y) in r.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            if let Some(wi) = r.iter().position(|&x| x != 0) {
                let piv = wi * 64 + r[wi].trailing_zeros() as usize;
                basis.push((piv, r));
                kept.push((p, w));
            }
        }
        assert!(kept.len() <= cols, "reduce kept {} rows over {} cuts", kept.len(), cols);
        let mut out = WeightedPartitionSet { universe: self.universe.clone(), entries: kept };
        out.normalize();
        Ok(out)
    }
}
