//! Heuristic r-divisions.
//!
//! Clusters partition the vertex set. Each cluster induces a connected
//! subgraph (weakly, for digraphs) with at most `r` vertices, and a cluster
//! vertex is a boundary vertex iff it has a neighbor, in either direction,
//! outside the cluster. No bound on boundary sizes is promised; see
//! [`RDivision::quality`].

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub id: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Sorted boundary vertex ids.
    pub boundary: Vec<usize>,
    /// Order used for patterns; position 0 is the base `s_0`.
    pub boundary_sequence: Vec<usize>,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices of the cluster that are not boundary vertices.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied().filter(|v| self.boundary.binary_search(v).is_err())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDivision {
    pub r: usize,
    pub clusters: Vec<Cluster>,
    owner: Vec<usize>,
    local: Vec<usize>,
    boundary_pos: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DivisionQuality {
    pub clusters: usize,
    pub boundary_sum: usize,
    pub max_boundary: usize,
    pub max_cluster: usize,
}

impl RDivision {
    /// Assembles a division from explicit vertex groups, computing boundaries
    /// against `g`. Does not check connectivity; see [`Self::validate`].
    pub fn from_parts(g: &Graph, r: usize, mut parts: Vec<Vec<usize>>) -> Result<RDivision> {
        let n = g.n();
        let mut owner = vec![usize::MAX; n];
        let mut local = vec![usize::MAX; n];
        parts.iter_mut().for_each(|p| p.sort_unstable());
        parts.sort_unstable_by_key(|p| p.first().copied());
        for (id, part) in parts.iter().enumerate() {
            for (i, &v) in part.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("vertex {v} in two clusters")));
                }
                owner[v] = id;
                local[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidParameter(format!("vertex {v} in no cluster")));
        }
        let mut boundary_pos = vec![None; n];
        let clusters = parts
            .into_iter()
            .enumerate()
            .map(|(id, vertices)| {
                let boundary: Vec<usize> = vertices
                    .iter()
                    .copied()
                    .filter(|&v| g.undirected_neighbors(v).any(|y| owner[y] != id))
                    .collect();
                for (i, &b) in boundary.iter().enumerate() {
                    boundary_pos[b] = Some(i);
                }
                Cluster { id, boundary_sequence: boundary.clone(), vertices, boundary }
            })
            .collect();
        Ok(RDivision { r, clusters, owner, local, boundary_pos })
    }

    /// Rebuilds a division from stored clusters (vertices and boundary
    /// sequences); boundaries are taken as given.
    pub fn from_clusters(n: usize, r: usize, parts: Vec<(Vec<usize>, Vec<usize>)>) -> Result<RDivision> {
        let mut owner = vec![usize::MAX; n];
        let mut local = vec![usize::MAX; n];
        let mut boundary_pos = vec![None; n];
        let mut clusters = Vec::with_capacity(parts.len());
        for (id, (vertices, seq)) in parts.into_iter().enumerate() {
            for (i, &v) in vertices.iter().enumerate() {
                if v >= n || owner[v] != usize::MAX {
                    return Err(Error::Decode(format!("bad vertex {v} in cluster {id}")));
                }
                owner[v] = id;
                local[v] = i;
            }
            if !vertices.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Decode(format!("cluster {id} vertices not sorted")));
            }
            for (i, &s) in seq.iter().enumerate() {
                if s >= n || owner[s] != id || boundary_pos[s].is_some() {
                    return Err(Error::Decode(format!("bad boundary vertex {s} in cluster {id}")));
                }
                boundary_pos[s] = Some(i);
            }
            let mut boundary = seq.clone();
            boundary.sort_unstable();
            clusters.push(Cluster { id, vertices, boundary, boundary_sequence: seq });
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Decode("division does not cover every vertex".into()));
        }
        Ok(RDivision { r, clusters, owner, local, boundary_pos })
    }

    #[inline]
    pub fn owner(&self, v: usize) -> usize {
        self.owner[v]
    }

    /// Index of `v` inside its owning cluster's `vertices`.
    #[inline]
    pub fn local_index(&self, v: usize) -> usize {
        self.local[v]
    }

    /// Position of `v` in its cluster's `boundary_sequence`, if it is a
    /// boundary vertex.
    #[inline]
    pub fn boundary_index(&self, v: usize) -> Option<usize> {
        self.boundary_pos[v]
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    /// All boundary vertices, sorted.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.clusters.iter().flat_map(|c| c.boundary.iter().copied()).collect();
        b.sort_unstable();
        b
    }

    pub fn quality(&self) -> DivisionQuality {
        DivisionQuality {
            clusters: self.clusters.len(),
            boundary_sum: self.clusters.iter().map(|c| c.boundary.len()).sum(),
            max_boundary: self.clusters.iter().map(|c| c.boundary.len()).max().unwrap_or(0),
            max_cluster: self.clusters.iter().map(|c| c.len()).max().unwrap_or(0),
        }
    }

    /// Induced subgraph of a cluster with local vertex indices.
    pub fn local_graph(&self, g: &Graph, cluster: usize) -> LocalGraph {
        let c = &self.clusters[cluster];
        let collect = |v: usize, reverse: bool| -> Vec<u32> {
            g.arcs(v, reverse)
                .iter()
                .map(|a| a.to as usize)
                .filter(|&y| self.owner[y] == cluster)
                .map(|y| self.local[y] as u32)
                .collect()
        };
        let out: Vec<Vec<u32>> = c.vertices.iter().map(|&v| collect(v, false)).collect();
        let inc = if g.is_directed() {
            c.vertices.iter().map(|&v| collect(v, true)).collect()
        } else {
            Vec::new()
        };
        LocalGraph { out, inc }
    }

    /// Checks every structural invariant against `g`; returns a description of
    /// the first violation.
    pub fn validate(&self, g: &Graph) -> core::result::Result<(), String> {
        if self.owner.len() != g.n() {
            return Err(format!("division covers {} vertices, graph has {}", self.owner.len(), g.n()));
        }
        for c in &self.clusters {
            if c.vertices.len() > self.r {
                return Err(format!("cluster {} has {} > r vertices", c.id, c.vertices.len()));
            }
            if c.vertices.is_empty() {
                return Err(format!("cluster {} is empty", c.id));
            }
            for &v in &c.vertices {
                if self.owner[v] != c.id {
                    return Err(format!("owner of {v} disagrees with cluster {}", c.id));
                }
            }
            let expect: Vec<usize> = c
                .vertices
                .iter()
                .copied()
                .filter(|&v| g.undirected_neighbors(v).any(|y| self.owner[y] != c.id))
                .collect();
            if expect != c.boundary {
                return Err(format!("cluster {} boundary mismatch", c.id));
            }
            let mut seq = c.boundary_sequence.clone();
            seq.sort_unstable();
            if seq != c.boundary {
                return Err(format!("cluster {} boundary sequence is not a permutation", c.id));
            }
            let lg = self.local_graph(g, c.id);
            if lg.undirected_bfs(0).iter().any(|d| !d.is_finite()) {
                return Err(format!("cluster {} is not connected", c.id));
            }
        }
        Ok(())
    }
}

/// Induced subgraph on one cluster, indexed `0..len`.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
}

impl LocalGraph {
    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    fn arcs(&self, v: usize, reverse: bool) -> &[u32] {
        if reverse && !self.inc.is_empty() {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    /// Unit-weight BFS inside the cluster. `reverse` follows arcs backwards.
    pub fn bfs(&self, s: usize, reverse: bool) -> Vec<Dist> {
        self.bfs_by(s, |v| self.arcs(v, reverse).iter().copied())
    }

    fn undirected_bfs(&self, s: usize) -> Vec<Dist> {
        let inc = &self.inc;
        self.bfs_by(s, move |v| {
            let extra: &[u32] = if inc.is_empty() { &[] } else { &inc[v] };
            self.out[v].iter().chain(extra).copied()
        })
    }

    fn bfs_by<'a, I: Iterator<Item = u32>>(&'a self, s: usize, next: impl Fn(usize) -> I) -> Vec<Dist> {
        let mut dist = vec![Dist::Unreachable; self.len()];
        if self.is_empty() {
            return dist;
        }
        dist[s] = Dist::ZERO;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let nd = dist[x].plus(1);
            for y in next(x) {
                let y = y as usize;
                if !dist[y].is_finite() {
                    dist[y] = nd;
                    q.push_back(y);
                }
            }
        }
        dist
    }
}

/// Recursive BFS-level bisection.
///
/// A piece larger than `r` is cut at the BFS level (from a pseudo-peripheral
/// start vertex) that best balances the two sides; the cut level joins the
/// smaller side, and each side is split into its connected components before
/// recursing. Disconnected inputs are divided per weak component. The
/// bisection leaves many small fragments, so adjacent pieces are then merged
/// while the union still fits in `r`.
pub fn build_r_division(g: &Graph, r: usize) -> Result<RDivision> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let n = g.n();
    let mut stamp = vec![0u32; n];
    let mut cur = 0u32;
    let mut finished = Vec::new();
    let (count, comp) = g.components();
    let mut work: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        work[comp[v]].push(v);
    }
    let mut level = vec![u32::MAX; n];

    while let Some(piece) = work.pop() {
        if piece.len() <= r {
            finished.push(piece);
            continue;
        }
        cur += 1;
        for &v in &piece {
            stamp[v] = cur;
        }
        let far = bfs_levels(g, piece[0], &stamp, cur, &mut level);
        let start = *far.last().and_then(|l| l.first()).unwrap_or(&piece[0]);
        let levels = bfs_levels(g, start, &stamp, cur, &mut level);
        debug_assert!(levels.len() >= 2, "connected piece larger than one vertex");

        let total = piece.len();
        let mut before = 0;
        let mut best = (usize::MAX, 0);
        for (m, l) in levels.iter().enumerate() {
            let after = total - before - l.len();
            let score = before.max(after);
            if score < best.0 {
                best = (score, m);
            }
            before += l.len();
        }
        let m = best.1;
        let low: Vec<usize> = levels[..m].iter().flatten().copied().collect();
        let high: Vec<usize> = levels[m + 1..].iter().flatten().copied().collect();
        let (mut small, big) = if low.len() <= high.len() { (low, high) } else { (high, low) };
        small.extend_from_slice(&levels[m]);
        for side in [small, big] {
            if side.is_empty() {
                continue;
            }
            cur += 1;
            for &v in &side {
                stamp[v] = cur;
            }
            for part in split_components(g, &side, &stamp, cur) {
                work.push(part);
            }
        }
    }
    RDivision::from_parts(g, r, merge_small(g, finished, r))
}

/// Greedy merging of adjacent pieces, smallest first. Each piece joins the
/// neighbor it shares the most edges with among those it fits with; ties go
/// to the smaller neighbor, then the lower piece index.
fn merge_small(g: &Graph, mut parts: Vec<Vec<usize>>, r: usize) -> Vec<Vec<usize>> {
    let mut owner = vec![0usize; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    loop {
        let mut order: Vec<usize> = (0..parts.len()).filter(|&i| !parts[i].is_empty()).collect();
        order.sort_by_key(|&i| (parts[i].len(), i));
        let mut merged = false;
        for c in order {
            let size = parts[c].len();
            if size == 0 || size >= r {
                continue;
            }
            let mut shared: hashbrown::HashMap<usize, usize> = hashbrown::HashMap::new();
            for &v in &parts[c] {
                for w in g.undirected_neighbors(v) {
                    let d = owner[w];
                    if d != c && size + parts[d].len() <= r {
                        *shared.entry(d).or_insert(0) += 1;
                    }
                }
            }
            let Some((d, _)) = shared
                .into_iter()
                .max_by_key(|&(d, k)| (k, core::cmp::Reverse(parts[d].len()), core::cmp::Reverse(d)))
            else {
                continue;
            };
            let (keep, gone) = if parts[c].len() >= parts[d].len() { (c, d) } else { (d, c) };
            let moved = core::mem::take(&mut parts[gone]);
            for &v in &moved {
                owner[v] = keep;
            }
            parts[keep].extend(moved);
            merged = true;
        }
        if !merged {
            break;
        }
    }
    parts.retain(|p| !p.is_empty());
    parts
}

/// BFS over the underlying undirected graph restricted to vertices whose
/// stamp equals `cur`. Returns the vertices grouped by level.
fn bfs_levels(g: &Graph, s: usize, stamp: &[u32], cur: u32, level: &mut [u32]) -> Vec<Vec<usize>> {
    let mut levels = vec![vec![s]];
    level[s] = 0;
    let mut touched = vec![s];
    loop {
        let mut next = Vec::new();
        let d = levels.len() as u32;
        for &x in levels.last().unwrap() {
            for y in g.undirected_neighbors(x) {
                if stamp[y] == cur && level[y] == u32::MAX {
                    level[y] = d;
                    touched.push(y);
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    for v in touched {
        level[v] = u32::MAX;
    }
    levels
}

fn split_components(g: &Graph, side: &[usize], stamp: &[u32], cur: u32) -> Vec<Vec<usize>> {
    let mut seen = hashbrown::HashSet::with_capacity(side.len());
    let mut parts = Vec::new();
    for &s in side {
        if !seen.insert(s) {
            continue;
        }
        let mut part = vec![s];
        let mut i = 0;
        while i < part.len() {
            let x = part[i];
            i += 1;
            for y in g.undirected_neighbors(x) {
                if stamp[y] == cur && seen.insert(y) {
                    part.push(y);
                }
            }
        }
        parts.push(part);
    }
    parts
}
