//! Distance patterns against a cluster's boundary sequence.
//!
//! A finite pattern of `u` is `p[i] = d(u,s_i) − d(u,s_0)`. An infinite pattern
//! clips differences of magnitude at least `r = |V(R)|` to `±∞` and is taken
//! against a re-based sequence whose position 0 is a chosen boundary vertex.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::dist::Dist;
use crate::division::LocalGraph;
use crate::error::{Error, Result};
use crate::set_system::sauer_shelah_bound;

/// Key code used for `−∞` in pattern tables.
pub const NEG_INF_CODE: i32 = i32::MIN;
/// Key code used for `+∞` in pattern tables.
pub const POS_INF_CODE: i32 = i32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub entries: Vec<i32>,
}

impl Pattern {
    /// `dists[i] = d(u, s_i)` in boundary-sequence order.
    pub fn from_distances(dists: &[Dist]) -> Result<Pattern> {
        let mut entries = Vec::with_capacity(dists.len());
        let base = match dists.first() {
            None => return Ok(Pattern { entries }),
            Some(d) => d.finite().ok_or(Error::UnreachableBoundary(0))?,
        };
        for (i, d) in dists.iter().enumerate() {
            let d = d.finite().ok_or(Error::UnreachableBoundary(i))?;
            entries.push(d as i32 - base as i32);
        }
        Ok(Pattern { entries })
    }
}

/// `min_i d(v,s_i) + p[i]`, with `to_v[i] = d(v, s_i)`. Unreachable terms are
/// skipped; `None` if no term is finite.
pub fn pattern_distance(p: &Pattern, to_v: &[Dist]) -> Option<i64> {
    p.entries
        .iter()
        .zip(to_v)
        .filter_map(|(&e, d)| d.finite().map(|d| i64::from(d) + i64::from(e)))
        .min()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    NegInf,
    Finite(i32),
    PosInf,
}

impl Entry {
    pub fn code(self) -> i32 {
        match self {
            Entry::NegInf => NEG_INF_CODE,
            Entry::Finite(x) => x,
            Entry::PosInf => POS_INF_CODE,
        }
    }

    pub fn from_code(c: i32) -> Entry {
        match c {
            NEG_INF_CODE => Entry::NegInf,
            POS_INF_CODE => Entry::PosInf,
            x => Entry::Finite(x),
        }
    }
}

/// Infinite pattern with base `s_t`. `entries` follow the re-based order
/// `[s_t, s_0, …, s_{t−1}, s_{t+1}, …]`; use [`Self::get`] for original
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfinitePattern {
    pub base: usize,
    pub entries: Vec<Entry>,
}

/// Position of original boundary index `i` in the order re-based at `t`.
#[inline]
pub fn rebased_position(i: usize, t: usize) -> usize {
    match i.cmp(&t) {
        core::cmp::Ordering::Equal => 0,
        core::cmp::Ordering::Less => i + 1,
        core::cmp::Ordering::Greater => i,
    }
}

/// Original boundary index stored at re-based position `k`.
#[inline]
pub fn original_index(k: usize, t: usize) -> usize {
    if k == 0 {
        t
    } else if k <= t {
        k - 1
    } else {
        k
    }
}

impl InfinitePattern {
    /// `dists[i] = d(u→s_i)` in original sequence order; `r = |V(R)|`.
    pub fn new(dists: &[Dist], base: usize, r: usize) -> Result<InfinitePattern> {
        if base >= dists.len() {
            return Err(Error::InvalidParameter("base index out of range".into()));
        }
        let d0 = i64::from(dists[base].finite().ok_or(Error::UnreachableBoundary(base))?);
        let r = r as i64;
        let entries = (0..dists.len())
            .map(|k| match dists[original_index(k, base)].finite() {
                None => Entry::PosInf,
                Some(d) => {
                    let diff = i64::from(d) - d0;
                    if diff <= -r {
                        Entry::NegInf
                    } else if diff >= r {
                        Entry::PosInf
                    } else {
                        Entry::Finite(diff as i32)
                    }
                }
            })
            .collect();
        Ok(InfinitePattern { base, entries })
    }

    /// Entry for original boundary index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> Entry {
        self.entries[rebased_position(i, self.base)]
    }

    /// Table key: base followed by entry codes.
    pub fn key(&self) -> Vec<i32> {
        let mut k = Vec::with_capacity(self.entries.len() + 1);
        k.push(self.base as i32);
        k.extend(self.entries.iter().map(|e| e.code()));
        k
    }
}

/// Result of an infinite pattern-to-vertex distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatternDistance {
    NegInf,
    Finite(i64),
    Undefined,
    /// Every term was skipped (only produced by the skipping variant).
    NoTerm,
}

/// Boundary indices that reach each vertex inside the cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSets {
    /// `sets[v]` lists original boundary indices, ascending.
    pub sets: Vec<Vec<u32>>,
}

/// One in-cluster BFS per boundary vertex. `boundary_local[i]` is the local
/// index of `s_i`.
pub fn reach_sets(local: &LocalGraph, boundary_local: &[usize]) -> ReachSets {
    let mut sets = vec![Vec::new(); local.len()];
    for (i, &s) in boundary_local.iter().enumerate() {
        for (v, d) in local.bfs(s, false).iter().enumerate() {
            if d.is_finite() {
                sets[v].push(i as u32);
            }
        }
    }
    ReachSets { sets }
}

/// `d(p→v)`: `Undefined` if any entry is `+∞`, otherwise the minimum over
/// `s_i ∈ reach` of `d(s_i→v) + p[i]`, forced to `NegInf` by any `−∞` term or
/// by an empty reach set. `from_s[i] = d(s_i→v)`.
pub fn infinite_pattern_distance(p: &InfinitePattern, reach: &[u32], from_s: &[Dist]) -> PatternDistance {
    if p.entries.contains(&Entry::PosInf) {
        return PatternDistance::Undefined;
    }
    fold_terms(p, reach, from_s).unwrap_or(PatternDistance::NegInf)
}

/// Variant that skips `+∞` entries instead of returning `Undefined`. Under a
/// maximal base `+∞` only marks boundary vertices the source cannot reach,
/// and such terms never realize a distance. Returns `NoTerm` when nothing is
/// left to minimize over.
pub fn infinite_pattern_distance_skipping(p: &InfinitePattern, reach: &[u32], from_s: &[Dist]) -> PatternDistance {
    fold_terms(p, reach, from_s).unwrap_or(PatternDistance::NoTerm)
}

fn fold_terms(p: &InfinitePattern, reach: &[u32], from_s: &[Dist]) -> Option<PatternDistance> {
    let mut best: Option<i64> = None;
    let mut neg = false;
    for &i in reach {
        let i = i as usize;
        match p.get(i) {
            Entry::PosInf => continue,
            Entry::NegInf => neg = true,
            Entry::Finite(x) => {
                let d = from_s[i].finite().expect("reach set member must reach v");
                let val = i64::from(d) + i64::from(x);
                best = Some(best.map_or(val, |b: i64| b.min(val)));
            }
        }
    }
    if neg {
        Some(PatternDistance::NegInf)
    } else {
        best.map(PatternDistance::Finite)
    }
}

/// Sauer–Shelah cap on distinct patterns of a cluster with `b` boundary
/// vertices and `r` vertices, for VC dimension at most `k`.
pub fn pattern_count_cap(b: usize, r: usize, k: u32) -> u128 {
    sauer_shelah_bound((b * (2 * r).saturating_sub(1)) as u64, k)
}

/// Trie over fixed-length `i32` keys mapping each distinct key to a dense id
/// with an attached payload.
#[derive(Clone, Debug)]
pub struct PatternTable<T> {
    key_len: usize,
    children: HashMap<(u32, i32), u32>,
    leaf: HashMap<u32, u32>,
    nodes: u32,
    keys: Vec<i32>,
    payloads: Vec<T>,
}

impl<T> PatternTable<T> {
    pub fn new(key_len: usize) -> Self {
        PatternTable {
            key_len,
            children: HashMap::new(),
            leaf: HashMap::new(),
            nodes: 1,
            keys: Vec::new(),
            payloads: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.payloads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payloads.is_empty()
    }

    pub fn key_len(&self) -> usize {
        self.key_len
    }

    pub fn lookup(&self, key: &[i32]) -> Option<u32> {
        debug_assert_eq!(key.len(), self.key_len);
        let mut node = 0u32;
        for &c in key {
            node = *self.children.get(&(node, c))?;
        }
        self.leaf.get(&node).copied()
    }

    /// Returns the id of `key` and whether it was newly inserted; `make` runs
    /// only for new keys.
    pub fn insert_with(&mut self, key: &[i32], make: impl FnOnce() -> T) -> (u32, bool) {
        assert_eq!(key.len(), self.key_len, "pattern key length");
        let mut node = 0u32;
        for &c in key {
            let fresh = self.nodes;
            node = *self.children.entry((node, c)).or_insert_with(|| fresh);
            if node == fresh {
                self.nodes += 1;
            }
        }
        if let Some(&id) = self.leaf.get(&node) {
            return (id, false);
        }
        let id = self.payloads.len() as u32;
        self.leaf.insert(node, id);
        self.keys.extend_from_slice(key);
        self.payloads.push(make());
        (id, true)
    }

    pub fn key(&self, id: u32) -> &[i32] {
        let s = id as usize * self.key_len;
        &self.keys[s..s + self.key_len]
    }

    pub fn payload(&self, id: u32) -> &T {
        &self.payloads[id as usize]
    }

    pub fn payloads(&self) -> &[T] {
        &self.payloads
    }

    /// Keys and payloads in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&[i32], &T)> {
        (0..self.len() as u32).map(move |id| (self.key(id), self.payload(id)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::RDivision;
    use crate::generate;
    use crate::graph::Graph;

    fn f(x: u32) -> Dist {
        Dist::Finite(x)
    }

    #[test]
    fn base_vertex_pattern_is_nonnegative() {
        let p = Pattern::from_distances(&[f(0), f(2), f(3)]).unwrap();
        assert_eq!(p.entries, vec![0, 2, 3]);
        assert_eq!(pattern_distance(&p, &[f(0), f(2), f(3)]), Some(0));
    }

    #[test]
    fn single_boundary() {
        // P5, cluster {2,3,4} with boundary {2}, u = 0.
        let p = Pattern::from_distances(&[f(2)]).unwrap();
        assert_eq!(p.entries, vec![0]);
        assert_eq!(pattern_distance(&p, &[f(1)]), Some(1));
        assert!(Pattern::from_distances(&[f(1), Dist::Unreachable]).is_err());
    }

    #[test]
    fn infinite_pattern_thresholds() {
        let d = [f(10), f(10), f(6), f(13), f(14), Dist::Unreachable];
        let p = InfinitePattern::new(&d, 0, 4).unwrap();
        use Entry::*;
        assert_eq!(p.entries, vec![Finite(0), Finite(0), NegInf, Finite(3), PosInf, PosInf]);
        let all_eq = InfinitePattern::new(&[f(3), f(3), f(3)], 1, 5).unwrap();
        assert!(all_eq.entries.iter().all(|&e| e == Finite(0)));
        assert!(InfinitePattern::new(&[Dist::Unreachable, f(1)], 0, 3).is_err());
    }

    #[test]
    fn rebasing() {
        let d = [f(1), f(2), f(5), f(3)];
        let p = InfinitePattern::new(&d, 2, 10).unwrap();
        assert_eq!(p.entries, vec![Entry::Finite(0), Entry::Finite(-4), Entry::Finite(-3), Entry::Finite(-2)]);
        for i in 0..4 {
            assert_eq!(p.get(i), Entry::Finite(d[i].finite().unwrap() as i32 - 5));
            assert_eq!(original_index(rebased_position(i, 2), 2), i);
        }
    }

    #[test]
    fn infinite_distance_cases() {
        use PatternDistance::*;
        let p = InfinitePattern { base: 0, entries: vec![Entry::Finite(0), Entry::PosInf] };
        assert_eq!(infinite_pattern_distance(&p, &[0], &[f(1), f(1)]), Undefined);
        assert_eq!(infinite_pattern_distance_skipping(&p, &[0, 1], &[f(1), f(1)]), Finite(1));
        assert_eq!(infinite_pattern_distance_skipping(&p, &[1], &[f(1), f(1)]), NoTerm);
        let z = InfinitePattern { base: 0, entries: vec![Entry::Finite(0); 3] };
        assert_eq!(infinite_pattern_distance(&z, &[0, 1, 2], &[f(4), f(2), f(3)]), Finite(2));
        assert_eq!(infinite_pattern_distance(&z, &[], &[f(4), f(2), f(3)]), NegInf);
        let n = InfinitePattern { base: 0, entries: vec![Entry::Finite(0), Entry::NegInf] };
        assert_eq!(infinite_pattern_distance(&n, &[0, 1], &[f(0), f(9)]), NegInf);
    }

    #[test]
    fn reach_sets_directed_path() {
        let g = Graph::unweighted(2, true, [(0, 1)]).unwrap();
        let d = RDivision::from_parts(&g, 2, vec![vec![0, 1]]).unwrap();
        let lg = d.local_graph(&g, 0);
        assert_eq!(reach_sets(&lg, &[0]).sets, vec![vec![0], vec![0]]);
        assert_eq!(reach_sets(&lg, &[1]).sets, vec![vec![], vec![0]]);
    }

    #[test]
    fn reach_sets_undirected_cover_boundary() {
        let g = generate::grid(4, 4).unwrap();
        let d = crate::division::build_r_division(&g, 6).unwrap();
        for c in &d.clusters {
            let lg = d.local_graph(&g, c.id);
            let bl: Vec<usize> = c.boundary_sequence.iter().map(|&s| d.local_index(s)).collect();
            let all: Vec<u32> = (0..bl.len() as u32).collect();
            assert!(reach_sets(&lg, &bl).sets.iter().all(|s| *s == all));
        }
    }

    #[test]
    fn table_dedups() {
        let mut t: PatternTable<u32> = PatternTable::new(3);
        let (a, new_a) = t.insert_with(&[0, 1, 2], || 7);
        let (b, _) = t.insert_with(&[0, 1, POS_INF_CODE], || 8);
        let (c, new_c) = t.insert_with(&[0, 1, 2], || 9);
        assert!(new_a && !new_c);
        assert_eq!(a, c);
        assert_ne!(a, b);
        assert_eq!(*t.payload(a), 7);
        assert_eq!(t.lookup(&[0, 1, POS_INF_CODE]), Some(b));
        assert_eq!(t.lookup(&[0, 1, 3]), None);
        assert_eq!(t.key(b), &[0, 1, POS_INF_CODE]);
        assert_eq!(t.len(), 2);
    }
}
