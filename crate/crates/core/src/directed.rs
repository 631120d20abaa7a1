//! Nested-ball distance oracle and infinite-pattern eccentricities for
//! unweighted digraphs.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::bitset::BitSet;
use crate::dist::Dist;
use crate::division::{build_r_division, RDivision};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{infinite_pattern_distance_skipping, reach_sets, Entry, InfinitePattern, PatternDistance, PatternTable};
use crate::set_system::sauer_shelah_bound;
use crate::undirected::DEFAULT_H;

pub(crate) const INF: u32 = u32::MAX;

#[inline]
pub(crate) fn to_dist(x: u32) -> Dist {
    if x == INF {
        Dist::Unreachable
    } else {
        Dist::Finite(x)
    }
}

fn check_input(g: &Graph) -> Result<()> {
    if !g.is_directed() {
        return Err(Error::NotDirected);
    }
    if !g.is_unit_weight() {
        return Err(Error::NotUnitWeight);
    }
    Ok(())
}

/// Forward rows `d(s→·)` and reverse rows `d(·→s)` for every boundary vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedRows {
    n: usize,
    vertices: Vec<usize>,
    index: Vec<u32>,
    forward: Vec<u32>,
    reverse: Vec<u32>,
}

impl DirectedRows {
    pub fn build(g: &Graph, div: &RDivision) -> Self {
        let n = g.n();
        let vertices = div.boundary_vertices();
        let mut forward = Vec::with_capacity(vertices.len() * n);
        let mut reverse = Vec::with_capacity(vertices.len() * n);
        let flat = |d: &Dist| d.finite().unwrap_or(INF);
        for &s in &vertices {
            forward.extend(g.sssp(s, false).dist.iter().map(flat));
            reverse.extend(g.sssp(s, true).dist.iter().map(flat));
        }
        let mut index = vec![u32::MAX; n];
        for (i, &b) in vertices.iter().enumerate() {
            index[b] = i as u32;
        }
        DirectedRows { n, vertices, index, forward, reverse }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `d(s→·)`, `INF`-coded.
    pub fn from(&self, s: usize) -> &[u32] {
        let i = self.index[s] as usize;
        &self.forward[i * self.n..(i + 1) * self.n]
    }

    /// `d(·→s)`, `INF`-coded.
    pub fn to(&self, s: usize) -> &[u32] {
        let i = self.index[s] as usize;
        &self.reverse[i * self.n..(i + 1) * self.n]
    }
}

#[inline]
fn add(a: u32, b: u32) -> u32 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

/// Global distances among the vertices of a cluster: the in-cluster BFS
/// distance, improved by any route through a boundary vertex.
fn intra_distances(g: &Graph, div: &RDivision, rows: &DirectedRows, cid: usize) -> Vec<u32> {
    let c = &div.clusters[cid];
    let size = c.len();
    let local = div.local_graph(g, cid);
    let to_s: Vec<&[u32]> = c.boundary_sequence.iter().map(|&s| rows.to(s)).collect();
    let from_s: Vec<&[u32]> = c.boundary_sequence.iter().map(|&s| rows.from(s)).collect();
    let mut intra = vec![INF; size * size];
    for (lu, &u) in c.vertices.iter().enumerate() {
        let dr = local.bfs(lu, false);
        let row = &mut intra[lu * size..(lu + 1) * size];
        for (lv, &v) in c.vertices.iter().enumerate() {
            let mut best = dr[lv].finite().unwrap_or(INF);
            for (ts, fs) in to_s.iter().zip(&from_s) {
                best = best.min(add(ts[u], fs[v]));
            }
            row[lv] = best;
        }
    }
    intra
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DirectedCluster {
    /// Distinct restrictions of balls to the cluster.
    pub restrictions: Vec<BitSet>,
    /// `d(Y→v)` per restriction and local vertex, `INF`-coded.
    pub reach_dist: Vec<u32>,
    /// Ball lists shared by sources with equal relative boundary distances:
    /// `(radius − r_1, restriction id)`.
    pub lists: Vec<Vec<(u32, u32)>>,
    pub intra: Vec<u32>,
}

/// Exact distance oracle for unweighted digraphs with `O(log n)` queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedOracle {
    pub(crate) h: u32,
    pub(crate) division: RDivision,
    pub(crate) clusters: Vec<DirectedCluster>,
    /// `(list id, r_1)` per `u * clusters + R`; list id `u32::MAX` when no
    /// boundary vertex of `R` is reachable from `u`.
    pub(crate) records: Vec<(u32, u32)>,
}

/// A nested ball sequence as seen from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedBalls {
    pub radii: Vec<u32>,
    pub restrictions: Vec<BitSet>,
}

impl DirectedOracle {
    pub fn build(g: &Graph, r: usize) -> Result<Self> {
        check_input(g)?;
        let div = build_r_division(g, r)?;
        Self::build_with(g, div)
    }

    pub fn build_with(g: &Graph, division: RDivision) -> Result<Self> {
        check_input(g)?;
        let rows = DirectedRows::build(g, &division);
        let n = g.n();
        let k = division.clusters.len();
        let mut records = vec![(u32::MAX, 0u32); n * k];
        let mut clusters = Vec::with_capacity(k);
        for c in &division.clusters {
            let size = c.len();
            let intra = intra_distances(g, &division, &rows, c.id);
            let to_s: Vec<&[u32]> = c.boundary_sequence.iter().map(|&s| rows.to(s)).collect();
            let from_s: Vec<&[u32]> = c.boundary_sequence.iter().map(|&s| rows.from(s)).collect();
            let mut restriction_ids: HashMap<BitSet, u32> = HashMap::new();
            let mut restrictions = Vec::new();
            let mut reach_dist: Vec<u32> = Vec::new();
            let mut lists = Vec::new();
            let mut table: PatternTable<u32> = PatternTable::new(c.boundary_sequence.len());
            let mut key = vec![0i32; c.boundary_sequence.len()];
            let mut du = vec![INF; size];
            for u in 0..n {
                if division.owner(u) == c.id {
                    continue;
                }
                let Some(r1) = to_s.iter().map(|ts| ts[u]).filter(|&d| d != INF).min() else { continue };
                for (slot, ts) in key.iter_mut().zip(&to_s) {
                    *slot = if ts[u] == INF { i32::MAX } else { (ts[u] - r1) as i32 };
                }
                let (lid, _) = table.insert_with(&key, || {
                    // d(u→w) for w in R, relative to r_1.
                    for (lw, &w) in c.vertices.iter().enumerate() {
                        du[lw] = key
                            .iter()
                            .zip(&from_s)
                            .filter(|(&kk, _)| kk != i32::MAX)
                            .map(|(&kk, fs)| add(kk as u32, fs[w]))
                            .min()
                            .unwrap_or(INF);
                    }
                    let mut radii: Vec<u32> = key.iter().filter(|&&kk| kk != i32::MAX).map(|&kk| kk as u32).collect();
                    radii.sort_unstable();
                    radii.dedup();
                    let mut list = Vec::with_capacity(radii.len());
                    for rad in radii {
                        let y = BitSet::from_indices(size, (0..size).filter(|&lw| du[lw] <= rad));
                        let next = restrictions.len() as u32;
                        let rid = *restriction_ids.entry(y.clone()).or_insert_with(|| {
                            for lv in 0..size {
                                let d = y.iter().map(|ly| intra[ly * size + lv]).min().unwrap_or(INF);
                                reach_dist.push(d);
                            }
                            restrictions.push(y);
                            next
                        });
                        list.push((rad, rid));
                    }
                    lists.push(list);
                    (lists.len() - 1) as u32
                });
                records[u * k + c.id] = (*table.payload(lid), r1);
            }
            clusters.push(DirectedCluster { restrictions, reach_dist, lists, intra });
        }
        Ok(DirectedOracle { h: DEFAULT_H, division, clusters, records })
    }

    pub fn n(&self) -> usize {
        self.division.n()
    }

    pub fn r(&self) -> usize {
        self.division.r
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn division(&self) -> &RDivision {
        &self.division
    }

    pub fn query(&self, u: usize, v: usize) -> Dist {
        if u == v {
            return Dist::ZERO;
        }
        let rv = self.division.owner(v);
        let size = self.division.clusters[rv].len();
        let lv = self.division.local_index(v);
        let c = &self.clusters[rv];
        if self.division.owner(u) == rv {
            return to_dist(c.intra[self.division.local_index(u) * size + lv]);
        }
        let (lid, r1) = self.records[u * self.clusters.len() + rv];
        if lid == u32::MAX {
            return Dist::Unreachable;
        }
        let list = &c.lists[lid as usize];
        let first = list.partition_point(|&(_, rid)| !c.restrictions[rid as usize].contains(lv));
        if self.division.boundary_index(v).is_some() {
            // Radii are exactly the distances to boundary vertices, so the
            // first ball holding a boundary target has radius d(u→v). The
            // reach formula below would be wrong here: a shortest path to a
            // boundary vertex can arrive from outside the cluster.
            return list.get(first).map_or(Dist::Unreachable, |&(rad, _)| Dist::Finite(r1 + rad));
        }
        if first == 0 {
            return Dist::Finite(r1 + list[0].0);
        }
        let (rad, rid) = list[first - 1];
        to_dist(add(r1 + rad, c.reach_dist[rid as usize * size + lv]))
    }

    /// `L(u, R)` with absolute radii; empty if `u` reaches no boundary vertex
    /// of `R` or lies in `R`.
    pub fn nested_balls(&self, u: usize, cluster: usize) -> NestedBalls {
        let (lid, r1) = self.records[u * self.clusters.len() + cluster];
        if lid == u32::MAX || self.division.owner(u) == cluster {
            return NestedBalls { radii: Vec::new(), restrictions: Vec::new() };
        }
        let c = &self.clusters[cluster];
        let list = &c.lists[lid as usize];
        NestedBalls {
            radii: list.iter().map(|&(rad, _)| r1 + rad).collect(),
            restrictions: list.iter().map(|&(_, rid)| c.restrictions[rid as usize].clone()).collect(),
        }
    }

    /// Distinct ball restrictions per cluster.
    pub fn restriction_counts(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.restrictions.len()).collect()
    }

    /// Clusters whose restriction count exceeds the Sauer–Shelah cap for VC
    /// dimension `h − 1` over the cluster's vertices.
    pub fn restriction_cap_violations(&self) -> Vec<usize> {
        self.division
            .clusters
            .iter()
            .zip(&self.clusters)
            .filter(|(c, dc)| dc.restrictions.len() as u128 > sauer_shelah_bound(c.len() as u64, self.h - 1))
            .map(|(c, _)| c.id)
            .collect()
    }

    /// Nestedness and strictly increasing radii for every `(u, R)`.
    pub fn check_nesting(&self) -> core::result::Result<(), (usize, usize)> {
        for u in 0..self.n() {
            for cid in 0..self.clusters.len() {
                let nb = self.nested_balls(u, cid);
                let radii_ok = nb.radii.windows(2).all(|w| w[0] < w[1]);
                let nested = nb.restrictions.windows(2).all(|w| w[0].is_subset(&w[1]));
                if !radii_ok || !nested {
                    return Err((u, cid));
                }
            }
        }
        Ok(())
    }

    pub fn space_bytes(&self) -> usize {
        let clusters: usize = self
            .clusters
            .iter()
            .map(|c| {
                c.restrictions.iter().map(|y| 8 * y.words().len()).sum::<usize>()
                    + 4 * c.reach_dist.len()
                    + c.lists.iter().map(|l| 8 * l.len()).sum::<usize>()
                    + 4 * c.intra.len()
            })
            .sum();
        clusters + 8 * self.records.len() + 16 * self.n()
    }
}

/// Per-cluster state for the maximum-base pattern computation.
pub struct ClusterPatterns<'a> {
    rows: &'a DirectedRows,
    boundary: &'a [usize],
    size: usize,
    reach: Vec<Vec<u32>>,
    /// `from_s[i * size + lv] = d(s_i→v)`.
    from_s: Vec<Dist>,
    table: PatternTable<Option<i64>>,
    /// Sources whose maximal-base pattern had a `+∞` entry for a reachable
    /// boundary vertex. Always zero when the maximum-base condition holds.
    pub hypothesis_violations: usize,
}

impl<'a> ClusterPatterns<'a> {
    pub fn new(g: &Graph, div: &'a RDivision, rows: &'a DirectedRows, cid: usize) -> Self {
        let c = &div.clusters[cid];
        let local = div.local_graph(g, cid);
        let boundary_local: Vec<usize> = c.boundary_sequence.iter().map(|&s| div.local_index(s)).collect();
        let reach = reach_sets(&local, &boundary_local).sets;
        let from_s = c
            .boundary_sequence
            .iter()
            .flat_map(|&s| {
                let row = rows.from(s);
                c.vertices.iter().map(move |&v| to_dist(row[v]))
            })
            .collect();
        ClusterPatterns {
            rows,
            boundary: &c.boundary_sequence,
            size: c.len(),
            reach,
            from_s,
            table: PatternTable::new(c.boundary_sequence.len() + 1),
            hypothesis_violations: 0,
        }
    }

    /// The maximal-base infinite pattern of `u`, or `None` if `u` reaches no
    /// boundary vertex. Ties pick the smallest index.
    pub fn pattern(&self, u: usize) -> Option<(InfinitePattern, u32)> {
        let dists: Vec<Dist> = self.boundary.iter().map(|&s| to_dist(self.rows.to(s)[u])).collect();
        let (t, dt) = dists
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.finite().map(|x| (i, x)))
            .fold(None, |best: Option<(usize, u32)>, (i, x)| match best {
                Some((_, bx)) if bx >= x => best,
                _ => Some((i, x)),
            })?;
        let p = InfinitePattern::new(&dists, t, self.size).expect("base is reachable");
        Some((p, dt))
    }

    /// `d(p→v)` for every local `v`, skipping `+∞` entries.
    pub fn distances(&self, p: &InfinitePattern) -> Vec<PatternDistance> {
        let b = self.boundary.len();
        (0..self.size)
            .map(|lv| {
                let col: Vec<Dist> = (0..b).map(|i| self.from_s[i * self.size + lv]).collect();
                infinite_pattern_distance_skipping(p, &self.reach[lv], &col)
            })
            .collect()
    }

    /// `Δ(u→R) = d(u→s_t) + max_v d(p→v)` over defined, finite values.
    /// `None` if no vertex of `R` is reachable from `u` through the boundary.
    pub fn delta(&mut self, u: usize) -> Option<u32> {
        let (p, dt) = self.pattern(u)?;
        for (i, &s) in self.boundary.iter().enumerate() {
            if p.get(i) == Entry::PosInf && self.rows.to(s)[u] != INF {
                self.hypothesis_violations += 1;
            }
        }
        let key = p.key();
        let id = match self.table.lookup(&key) {
            Some(id) => id,
            None => {
                let best = self
                    .distances(&p)
                    .into_iter()
                    .filter_map(|d| match d {
                        PatternDistance::Finite(x) => Some(x),
                        _ => None,
                    })
                    .max();
                self.table.insert_with(&key, || best).0
            }
        };
        self.table.payload(id).map(|m| (i64::from(dt) + m) as u32)
    }

    pub fn distinct_patterns(&self) -> usize {
        self.table.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEccResult {
    /// Largest finite `d(u→v)` per source.
    pub ecc: Vec<u32>,
    pub diameter: u32,
    pub strongly_connected: bool,
    /// Distinct maximal-base patterns summed over clusters.
    pub pattern_count: usize,
    pub hypothesis_violations: usize,
}

pub fn directed_eccentricities(g: &Graph, r: usize) -> Result<DirectedEccResult> {
    check_input(g)?;
    let div = build_r_division(g, r)?;
    directed_eccentricities_with(g, &div)
}

pub fn directed_eccentricities_with(g: &Graph, div: &RDivision) -> Result<DirectedEccResult> {
    check_input(g)?;
    let rows = DirectedRows::build(g, div);
    let n = g.n();
    let mut ecc = vec![0u32; n];
    let mut pattern_count = 0;
    let mut hypothesis_violations = 0;
    for c in &div.clusters {
        let size = c.len();
        let intra = intra_distances(g, div, &rows, c.id);
        let mut cp = ClusterPatterns::new(g, div, &rows, c.id);
        for u in 0..n {
            let delta = if div.owner(u) == c.id {
                let lu = div.local_index(u);
                intra[lu * size..(lu + 1) * size].iter().copied().filter(|&d| d != INF).max()
            } else {
                cp.delta(u)
            };
            if let Some(d) = delta {
                ecc[u] = ecc[u].max(d);
            }
        }
        pattern_count += cp.distinct_patterns();
        hypothesis_violations += cp.hypothesis_violations;
    }
    Ok(DirectedEccResult {
        diameter: ecc.iter().copied().max().unwrap_or(0),
        ecc,
        strongly_connected: g.is_strongly_connected(),
        pattern_count,
        hypothesis_violations,
    })
}
