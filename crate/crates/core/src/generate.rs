//! Seeded generators for the test and benchmark corpus.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `w x h` grid; vertex `(x, y)` has id `y * w + x`.
pub fn grid(w: usize, h: usize) -> Result<Graph> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidParameter(format!("grid({w},{h}) needs positive sides")));
    }
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::unweighted(w * h, false, edges)
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs at least one vertex".into()));
    }
    Graph::unweighted(n, false, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle({n}) needs n >= 3")));
    }
    Graph::unweighted(n, false, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("directed cycle({n}) needs n >= 2")));
    }
    Graph::unweighted(n, true, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("tree needs at least one vertex".into()));
    }
    let mut rng = rng(seed);
    Graph::unweighted(n, false, (1..n).map(|i| (rng.gen_range(0..i), i)).collect::<Vec<_>>())
}

/// Random planar graph with edge keep-probability 1/2; see
/// [`random_planar_with`].
pub fn random_planar(n: usize, seed: u64) -> Result<Graph> {
    random_planar_with(n, 0.5, seed)
}

type Point = (i64, i64);

fn turn(a: Point, b: Point, c: Point) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Straight-line triangulation of `n` random lattice points, built by an
/// incremental sweep that attaches each new point to the visible part of the
/// current convex hull. A random spanning tree of the triangulation is kept
/// and every other edge survives with probability `keep`. The output is
/// connected and planar.
pub fn random_planar_with(n: usize, keep: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("random_planar needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&keep) {
        return Err(Error::InvalidParameter(format!("keep probability {keep} not in [0,1]")));
    }
    let mut rng = rng(seed);
    const SPAN: i64 = 1 << 24;
    let mut seen = HashSet::new();
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.gen_range(0..SPAN), rng.gen_range(0..SPAN));
        if seen.insert(p) {
            pts.push(p);
        }
    }
    pts.sort_unstable();
    let tri = sweep_triangulation(&pts);

    // Relabel so vertex ids carry no geometric order.
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &tri {
        adj[a].push(b);
        adj[b].push(a);
    }
    // Random spanning tree: grow from a random root, expanding a random
    // frontier vertex each step.
    let mut in_tree = HashSet::new();
    let mut parent_seen = vec![false; n];
    let root = rng.gen_range(0..n);
    parent_seen[root] = true;
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let i = rng.gen_range(0..frontier.len());
        let x = frontier.swap_remove(i);
        let mut nb = adj[x].clone();
        nb.shuffle(&mut rng);
        for y in nb {
            if !parent_seen[y] {
                parent_seen[y] = true;
                in_tree.insert((x.min(y), x.max(y)));
                frontier.push(y);
            }
        }
    }
    let mut edges = Vec::new();
    for &(a, b) in &tri {
        let key = (a.min(b), a.max(b));
        if in_tree.contains(&key) || rng.gen_bool(keep) {
            edges.push((label[a], label[b]));
        }
    }
    edges.sort_unstable();
    Graph::unweighted(n, false, edges)
}

/// Triangulates lexicographically sorted, distinct points. Returns edges as
/// index pairs.
fn sweep_triangulation(pts: &[Point]) -> Vec<(usize, usize)> {
    let n = pts.len();
    let mut edges = Vec::new();
    if n < 2 {
        return edges;
    }
    // Collinear prefix: a chain until the first point off the line.
    let mut chain = vec![0usize, 1];
    edges.push((0, 1));
    let mut k = 2;
    while k < n && turn(pts[0], pts[chain[chain.len() - 1]], pts[k]) == 0 {
        edges.push((chain[chain.len() - 1], k));
        chain.push(k);
        k += 1;
    }
    if k == n {
        return edges;
    }
    for &c in &chain {
        edges.push((c, k));
    }
    let last = chain[chain.len() - 1];
    let mut hull: Vec<usize> = if turn(pts[0], pts[last], pts[k]) > 0 {
        chain.iter().copied().chain([k]).collect()
    } else {
        [0, k].into_iter().chain(chain[1..].iter().rev().copied()).collect()
    };

    for p in k + 1..n {
        let h = hull.len();
        let vis: Vec<bool> = (0..h)
            .map(|i| turn(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) < 0)
            .collect();
        let m = vis.iter().filter(|&&v| v).count();
        assert!(m > 0, "sorted sweep point must see the hull");
        let start = (0..h)
            .find(|&i| vis[i] && !vis[(i + h - 1) % h])
            .expect("visible chain has a start");
        for j in 0..=m {
            edges.push((hull[(start + j) % h], p));
        }
        let mut next = Vec::with_capacity(h - m + 2);
        for j in 0..=(h - m) {
            next.push(hull[(start + m + j) % h]);
        }
        next.push(p);
        hull = next;
    }
    edges
}

/// Turns an undirected graph into a digraph: each edge keeps both directions
/// with probability 1/3, otherwise one uniformly random direction.
pub fn orient(g: &Graph, seed: u64) -> Result<Graph> {
    orient_with(g, seed, false)
}

/// Like [`orient`], but every edge of a random spanning tree keeps both
/// directions, so the result is strongly connected when `g` is connected.
pub fn orient_strong(g: &Graph, seed: u64) -> Result<Graph> {
    orient_with(g, seed, true)
}

fn orient_with(g: &Graph, seed: u64, strong: bool) -> Result<Graph> {
    if g.is_directed() {
        return Err(Error::NotUndirected);
    }
    let mut rng = rng(seed);
    let mut tree = vec![false; g.m()];
    if strong {
        let mut seen = vec![false; g.n()];
        for s in 0..g.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut frontier = vec![s];
            while !frontier.is_empty() {
                let i = rng.gen_range(0..frontier.len());
                let x = frontier.swap_remove(i);
                for a in g.out_arcs(x) {
                    let y = a.to as usize;
                    if !seen[y] {
                        seen[y] = true;
                        tree[a.edge as usize] = true;
                        frontier.push(y);
                    }
                }
            }
        }
    }
    let mut arcs = Vec::with_capacity(g.m() * 2);
    for (i, e) in g.edges().iter().enumerate() {
        let (u, v, w) = (e.u as usize, e.v as usize, e.w);
        let roll = rng.gen_range(0..3u8);
        if tree[i] || roll == 0 {
            arcs.push((u, v, w));
            arcs.push((v, u, w));
        } else if roll == 1 {
            arcs.push((u, v, w));
        } else {
            arcs.push((v, u, w));
        }
    }
    Graph::new(g.n(), true, arcs)
}

/// Result of [`subdivide`].
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Graph,
    /// For each original edge, the id of its first unit edge (the one leaving
    /// the original tail).
    pub first_edge: Vec<usize>,
}

/// Replaces each weight-`w` edge with a path of `w` unit edges. Original
/// vertices keep their ids; new vertices are appended. Refuses to create
/// more than `cap` vertices.
pub fn subdivide(g: &Graph, cap: usize) -> Result<Subdivision> {
    let extra: u64 = g.edges().iter().map(|e| u64::from(e.w) - 1).sum();
    let total = g.n() as u64 + extra;
    if total > cap as u64 {
        return Err(Error::TooLarge { what: "subdivision", n: total as usize, cap });
    }
    let mut next = g.n();
    let mut arcs = Vec::with_capacity(total as usize);
    let mut first_edge = Vec::with_capacity(g.m());
    for e in g.edges() {
        first_edge.push(arcs.len());
        let mut prev = e.u as usize;
        for _ in 1..e.w {
            arcs.push((prev, next));
            prev = next;
            next += 1;
        }
        arcs.push((prev, e.v as usize));
    }
    Ok(Subdivision { graph: Graph::unweighted(next, g.is_directed(), arcs)?, first_edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Dist;

    #[test]
    fn grid_counts() {
        let g = grid(3, 3).unwrap();
        assert_eq!((g.n(), g.m()), (9, 12));
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn cycle_diameter() {
        assert_eq!(cycle(5).unwrap().all_pairs().unwrap().max_finite(), 2);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn subdivide_single_edge() {
        let g = Graph::new(2, false, [(0, 1, 3)]).unwrap();
        let s = subdivide(&g, 100).unwrap();
        assert_eq!(s.graph.m(), 3);
        assert_eq!(s.graph.sssp(0, false).get(1), Dist::Finite(3));
        assert_eq!(s.first_edge, vec![0]);
        assert!(subdivide(&g, 3).is_err());
    }

    #[test]
    fn random_planar_is_connected_and_sparse() {
        for seed in 0..10 {
            let g = random_planar(200, seed).unwrap();
            assert_eq!(g.n(), 200);
            assert!(g.is_connected());
            assert!(g.m() <= 3 * g.n() - 6);
        }
        assert_eq!(random_planar(1, 0).unwrap().m(), 0);
        assert_eq!(random_planar(2, 0).unwrap().m(), 1);
    }

    #[test]
    fn full_triangulation_edge_count() {
        // A triangulation of a point set with hull size k has 3n - 3 - k edges.
        let g = random_planar_with(100, 1.0, 7).unwrap();
        assert!(g.m() <= 3 * 100 - 6 && g.m() >= 2 * 100);
    }

    #[test]
    fn sweep_handles_collinear_prefix() {
        let pts = [(0, 0), (1, 0), (2, 0), (3, 0), (1, 5), (4, -2)];
        let edges = sweep_triangulation(&pts);
        // 4 collinear, then apex to all 4, then a point below.
        assert!(edges.contains(&(3, 4)));
        assert!(edges.iter().any(|&(_, b)| b == 5));
        let g = Graph::unweighted(6, false, edges).unwrap();
        assert!(g.is_connected());
        let all_collinear = sweep_triangulation(&[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(all_collinear, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn orientations() {
        let g = random_planar(100, 3).unwrap();
        let d = orient(&g, 1).unwrap();
        assert!(d.is_directed() && d.m() >= g.m());
        assert!(d.underlying().m() == g.m());
        assert!(orient_strong(&g, 1).unwrap().is_strongly_connected());
    }

    #[test]
    fn seeds_are_deterministic() {
        assert_eq!(random_planar(50, 9).unwrap(), random_planar(50, 9).unwrap());
        assert_eq!(random_tree(30, 2).unwrap(), random_tree(30, 2).unwrap());
    }
}
