//! Graph storage and exact shortest-path primitives.
//!
//! Everything here is deliberately simple: BFS for unit weights, a binary-heap
//! Dijkstra otherwise. The rest of the crate is checked against these
//! routines, so they do no clever pruning.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashSet;
use num_bigint::BigUint;

use crate::dist::Dist;
use crate::error::{Error, Result};

/// Default cap on `n` for [`Graph::all_pairs`].
pub const ALL_PAIRS_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub w: u32,
}

/// One adjacency entry: the vertex at the other end and the edge id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub to: u32,
    pub edge: u32,
}

/// Immutable graph in CSR form.
///
/// Undirected edges are stored once (with `u < v`) and appear in both
/// endpoints' adjacency. Directed graphs keep a separate in-adjacency.
/// Edge ids are insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    unit: bool,
    edges: Vec<Edge>,
    out_start: Vec<u32>,
    out_arcs: Vec<Arc>,
    in_start: Vec<u32>,
    in_arcs: Vec<Arc>,
}

fn csr(n: usize, pairs: impl Iterator<Item = (usize, Arc)> + Clone) -> (Vec<u32>, Vec<Arc>) {
    let mut start = vec![0u32; n + 1];
    for (v, _) in pairs.clone() {
        start[v + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut arcs = vec![Arc { to: 0, edge: 0 }; start[n] as usize];
    for (v, a) in pairs {
        arcs[fill[v] as usize] = a;
        fill[v] += 1;
    }
    (start, arcs)
}

impl Graph {
    /// Builds a graph from `(u, v, w)` triples. Rejects self-loops, zero
    /// weights, out-of-range endpoints and parallel edges.
    pub fn new(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Graph> {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if w == 0 {
                return Err(Error::ZeroWeight { u, v });
            }
            let (a, b) = if directed || u < v { (u, v) } else { (v, u) };
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateEdge { u, v });
            }
            list.push(Edge { u: a as u32, v: b as u32, w });
        }
        Ok(Self::from_checked(n, directed, list))
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted(
        n: usize,
        directed: bool,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        Self::new(n, directed, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    fn from_checked(n: usize, directed: bool, edges: Vec<Edge>) -> Graph {
        let unit = edges.iter().all(|e| e.w == 1);
        let fwd = edges.iter().enumerate().map(|(i, e)| {
            (e.u as usize, Arc { to: e.v, edge: i as u32 })
        });
        let bwd = edges.iter().enumerate().map(|(i, e)| {
            (e.v as usize, Arc { to: e.u, edge: i as u32 })
        });
        let (out_start, out_arcs, in_start, in_arcs) = if directed {
            let (os, oa) = csr(n, fwd);
            let (is, ia) = csr(n, bwd);
            (os, oa, is, ia)
        } else {
            let (os, oa) = csr(n, fwd.chain(bwd));
            (os, oa, Vec::new(), Vec::new())
        };
        Graph { n, directed, unit, edges, out_start, out_arcs, in_start, in_arcs }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// True when every edge has weight 1 (vacuously true without edges).
    #[inline]
    pub fn is_unit_weight(&self) -> bool {
        self.unit
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// Out-arcs of `v` (all incident arcs when undirected).
    #[inline]
    pub fn out_arcs(&self, v: usize) -> &[Arc] {
        &self.out_arcs[self.out_start[v] as usize..self.out_start[v + 1] as usize]
    }

    /// In-arcs of `v`; `to` is the tail of the arc. Same as [`Self::out_arcs`]
    /// for undirected graphs.
    #[inline]
    pub fn in_arcs(&self, v: usize) -> &[Arc] {
        if self.directed {
            &self.in_arcs[self.in_start[v] as usize..self.in_start[v + 1] as usize]
        } else {
            self.out_arcs(v)
        }
    }

    #[inline]
    pub fn arcs(&self, v: usize, reverse: bool) -> &[Arc] {
        if reverse {
            self.in_arcs(v)
        } else {
            self.out_arcs(v)
        }
    }

    /// Neighbors in the underlying undirected graph. May repeat a vertex when
    /// both `u->v` and `v->u` exist.
    pub fn undirected_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let extra: &[Arc] = if self.directed { self.in_arcs(v) } else { &[] };
        self.out_arcs(v).iter().chain(extra).map(|a| a.to as usize)
    }

    /// Same vertex set and edges, every arc reversed.
    pub fn reversed(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let edges = self.edges.iter().map(|e| Edge { u: e.v, v: e.u, w: e.w }).collect();
        Self::from_checked(self.n, true, edges)
    }

    /// Underlying undirected graph (antiparallel pairs merged, smaller weight kept).
    pub fn underlying(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut best: hashbrown::HashMap<(u32, u32), (usize, u32)> = hashbrown::HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let key = (e.u.min(e.v), e.u.max(e.v));
            let slot = best.entry(key).or_insert((i, e.w));
            if e.w < slot.1 {
                slot.1 = e.w;
            }
        }
        let mut list: Vec<_> = best.into_iter().map(|((u, v), (i, w))| (i, Edge { u, v, w })).collect();
        list.sort_unstable_by_key(|(i, _)| *i);
        Self::from_checked(self.n, false, list.into_iter().map(|(_, e)| e).collect())
    }

    /// Single-source distances. With `reverse`, row entry `v` is `d(v -> s)`.
    pub fn sssp(&self, s: usize, reverse: bool) -> DistanceRow {
        assert!(s < self.n, "source {s} out of range");
        let dist = if self.unit { self.bfs(s, reverse) } else { self.dijkstra(s, reverse) };
        DistanceRow { source: s, dist }
    }

    fn bfs(&self, s: usize, reverse: bool) -> Vec<Dist> {
        let mut dist = vec![Dist::Unreachable; self.n];
        let mut queue = VecDeque::new();
        dist[s] = Dist::ZERO;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let next = dist[x].plus(1);
            for a in self.arcs(x, reverse) {
                let y = a.to as usize;
                if !dist[y].is_finite() {
                    dist[y] = next;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn dijkstra(&self, s: usize, reverse: bool) -> Vec<Dist> {
        let mut dist = vec![Dist::Unreachable; self.n];
        let mut heap = BinaryHeap::new();
        dist[s] = Dist::ZERO;
        heap.push(Reverse((0u32, s)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if Dist::Finite(d) > dist[x] {
                continue;
            }
            for a in self.arcs(x, reverse) {
                let y = a.to as usize;
                let nd = Dist::Finite(d).plus(self.edges[a.edge as usize].w);
                if nd < dist[y] {
                    dist[y] = nd;
                    heap.push(Reverse((nd.finite().unwrap(), y)));
                }
            }
        }
        dist
    }

    /// All-pairs distances with the default size cap.
    pub fn all_pairs(&self) -> Result<DistMatrix> {
        self.all_pairs_capped(ALL_PAIRS_CAP)
    }

    pub fn all_pairs_capped(&self, cap: usize) -> Result<DistMatrix> {
        if self.n > cap {
            return Err(Error::TooLarge { what: "all-pairs distances", n: self.n, cap });
        }
        let mut data = Vec::with_capacity(self.n * self.n);
        for u in 0..self.n {
            data.extend_from_slice(&self.sssp(u, false).dist);
        }
        Ok(DistMatrix { n: self.n, data })
    }

    /// Edge ids of the shortest-path tree rooted at `root`, sorted.
    ///
    /// Each reachable vertex keeps the tight in-edge whose tail has the
    /// smallest id, then the smallest edge id.
    pub fn shortest_path_tree(&self, root: usize) -> Vec<usize> {
        assert!(root < self.n, "root {root} out of range");
        let edges: Vec<(usize, usize, u64)> = self
            .edges
            .iter()
            .map(|e| (e.u as usize, e.v as usize, u64::from(e.w)))
            .collect();
        WeightedTree::build(self.n, self.directed, &edges, root).edge_set()
    }

    /// Weakly connected components, as a component index per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for y in self.undirected_neighbors(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// Weak connectivity. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().0 == 1
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = |row: DistanceRow| row.dist.iter().all(|d| d.is_finite());
        all(self.sssp(0, false)) && all(self.sssp(0, true))
    }
}

/// Distances from (or, for reverse searches, to) a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<Dist>,
}

impl DistanceRow {
    #[inline]
    pub fn get(&self, v: usize) -> Dist {
        self.dist[v]
    }

    /// Largest finite entry.
    pub fn max_finite(&self) -> u32 {
        self.dist.iter().filter_map(|d| d.finite()).max().unwrap_or(0)
    }
}

/// Dense `n x n` distance matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistMatrix {
    n: usize,
    data: Vec<Dist>,
}

impl DistMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Dist {
        self.data[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[Dist] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn max_finite(&self) -> u32 {
        self.data.iter().filter_map(|d| d.finite()).max().unwrap_or(0)
    }

    /// Sum of all finite ordered-pair entries.
    pub fn finite_sum(&self) -> u64 {
        self.data.iter().filter_map(|d| d.finite()).map(u64::from).sum()
    }
}

/// Weight type for the generic shortest-path tree.
pub trait PathWeight: Clone + Ord {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl PathWeight for u64 {
    fn zero() -> Self {
        0
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("path weight overflow")
    }
}

impl PathWeight for BigUint {
    fn zero() -> Self {
        BigUint::default()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

/// Shortest-path tree over an explicit edge list with arbitrary
/// nonnegative weights.
#[derive(Clone, Debug)]
pub struct WeightedTree<W> {
    pub root: usize,
    pub dist: Vec<Option<W>>,
    /// `(predecessor, edge id)` of every reached non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Number of tight in-edges per vertex (edges `a -> x` with
    /// `dist[a] + w = dist[x]`). A count above one is a tie.
    pub tight_in: Vec<u32>,
}

impl<W: PathWeight> WeightedTree<W> {
    pub fn build(n: usize, directed: bool, edges: &[(usize, usize, W)], root: usize) -> Self {
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, (u, v, _)) in edges.iter().enumerate() {
            out[*u].push((*v, i));
            inc[*v].push((*u, i));
            if !directed {
                out[*v].push((*u, i));
                inc[*u].push((*v, i));
            }
        }

        let mut dist: Vec<Option<W>> = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[root] = Some(W::zero());
        heap.push(Reverse((W::zero(), root)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if done[x] {
                continue;
            }
            done[x] = true;
            for &(y, e) in &out[x] {
                let nd = d.plus(&edges[e].2);
                if dist[y].as_ref().map_or(true, |cur| nd < *cur) {
                    dist[y] = Some(nd.clone());
                    heap.push(Reverse((nd, y)));
                }
            }
        }

        let mut parent = vec![None; n];
        let mut tight_in = vec![0u32; n];
        for x in 0..n {
            let Some(dx) = dist[x].as_ref() else { continue };
            for &(a, e) in &inc[x] {
                let Some(da) = dist[a].as_ref() else { continue };
                if da.plus(&edges[e].2) == *dx {
                    tight_in[x] += 1;
                    if x != root && parent[x].map_or(true, |p| (a, e) < p) {
                        parent[x] = Some((a, e));
                    }
                }
            }
        }
        WeightedTree { root, dist, parent, tight_in }
    }

    pub fn edge_set(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.parent.iter().flatten().map(|&(_, e)| e).collect();
        ids.sort_unstable();
        ids
    }

    /// Vertices on the tree path from the root to `v` (inclusive), or `None`
    /// when `v` is unreachable.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        self.dist[v].as_ref()?;
        let mut path = vec![v];
        let mut x = v;
        while let Some((p, _)) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        Some(path)
    }
}
