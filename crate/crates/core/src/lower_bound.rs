//! Weighted planar digraph whose shortest-path trees shatter an `r`-edge set.
//!
//! A directed path `P` carries the special edges `e_j = u_j → v_j`. For every
//! bit string `s_i` an anchor `a_i` gets two horizontal paths (`y` above `P`,
//! `z` below) and vertical edges into the previous anchor's paths, weighted so
//! that the tree of `a_i` uses `e_j` exactly when bit `j` of `s_i` is set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::generate::{subdivide, Subdivision};
use crate::graph::{Graph, WeightedTree};

pub const MAX_R: usize = 12;

/// Default cap on the subdivided gadget.
pub const SUBDIVISION_CAP: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Special,
    Connector,
    HorizontalY,
    HorizontalZ,
    VerticalY,
    VerticalZ,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub r: usize,
    pub n: usize,
    /// `(tail, head, weight)`; ids are positions in this list.
    pub edges: Vec<(usize, usize, BigUint)>,
    pub kinds: Vec<EdgeKind>,
    /// Edge ids of `e_1..e_r`.
    pub x: Vec<usize>,
    pub anchors: Vec<usize>,
    pub a: Vec<BigUint>,
    pub m: BigUint,
}

impl Gadget {
    #[inline]
    pub fn u(&self, j: usize) -> usize {
        2 * (j - 1)
    }

    #[inline]
    pub fn v(&self, j: usize) -> usize {
        2 * (j - 1) + 1
    }

    /// `y_{ij}` for `j ∈ 0..=r`; `y_{i0} = a_i`.
    #[inline]
    pub fn y(&self, i: usize, j: usize) -> usize {
        if j == 0 {
            self.anchors[i]
        } else {
            self.anchors[i] + j
        }
    }

    #[inline]
    pub fn z(&self, i: usize, j: usize) -> usize {
        if j == 0 {
            self.anchors[i]
        } else {
            self.anchors[i] + self.r + j
        }
    }

    /// Bit `j` (1-based, most significant first) of `s_i`.
    #[inline]
    pub fn bit(&self, i: usize, j: usize) -> bool {
        (i >> (self.r - j)) & 1 == 1
    }

    /// Closed-form vertex and edge counts.
    pub fn expected_counts(r: usize) -> (usize, usize) {
        let k = 1usize << r;
        (3 * r - 1 + k * (2 * r + 1), 3 * r - 2 + k * 4 * r)
    }

    /// Whether `M ≥ 10 · A_last`, the default choice.
    pub fn m_is_large(&self) -> bool {
        self.m >= self.a.last().unwrap() * 10u32
    }

    /// Edge id lookup; gadgets have no parallel edges.
    pub fn edge_id(&self, tail: usize, head: usize) -> Option<usize> {
        self.edges.iter().position(|(a, b, _)| *a == tail && *b == head)
    }

    /// `u32`-weighted graph; fails if a weight does not fit.
    pub fn to_graph(&self) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|(a, b, w)| {
                w.to_u32()
                    .map(|w| (*a, *b, w))
                    .ok_or_else(|| Error::InvalidParameter(format!("weight {w} does not fit in u32")))
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(self.n, true, edges)
    }

    /// Same arcs with unit weights, for structural checks.
    pub fn skeleton(&self) -> Result<Graph> {
        Graph::unweighted(self.n, true, self.edges.iter().map(|e| (e.0, e.1)))
    }

    /// Sum of all edge weights: the edge count after unit subdivision.
    pub fn total_weight(&self) -> BigUint {
        self.edges.iter().map(|e| &e.2).sum()
    }

    /// Unit-weight subdivision; `X` maps to the first unit edge of each `e_j`.
    pub fn to_unweighted(&self, cap: usize) -> Result<(Subdivision, Vec<usize>)> {
        let total = self.total_weight();
        let limit = BigUint::from(cap);
        if total > limit {
            return Err(Error::TooLarge {
                what: "subdivided gadget",
                n: total.to_usize().unwrap_or(usize::MAX),
                cap,
            });
        }
        let sub = subdivide(&self.to_graph()?, cap)?;
        let x = self.x.iter().map(|&e| sub.first_edge[e]).collect();
        Ok((sub, x))
    }
}

/// `A_i = 4 A_{i−1}` for `i < 2^r`.
pub fn anchor_constants(r: usize, a0: u64) -> Vec<BigUint> {
    let mut a = vec![BigUint::from(a0)];
    for _ in 1..1usize << r {
        let next = a.last().unwrap() << 2u32;
        a.push(next);
    }
    a
}

/// Checks `A_i ≥ 2A_t + (A_{i−1} + … + A_0 + 1)` for all `t < i`. Returns the
/// first violating `(i, t)`.
pub fn check_growth(a: &[BigUint]) -> core::result::Result<(), (usize, usize)> {
    // The right side grows with A_t, so for a nondecreasing sequence the
    // binding case is t = i − 1; other t are checked through it.
    let mut prefix = BigUint::zero();
    for i in 1..a.len() {
        if a[i] < a[i - 1] {
            return Err((i, i - 1));
        }
        prefix += &a[i - 1];
        let rhs = (&a[i - 1] << 1u32) + &prefix + 1u32;
        if a[i] < rhs {
            return Err((i, i - 1));
        }
    }
    Ok(())
}

/// Builds the gadget. `m = None` picks `10 · A_{2^r−1}`; an explicit `m` must
/// keep every horizontal weight `M − 2A_i` nonnegative.
pub fn build_gadget(r: usize, a0: u64, m: Option<BigUint>) -> Result<Gadget> {
    if !(1..=MAX_R).contains(&r) {
        return Err(Error::InvalidParameter(format!("r must be in 1..={MAX_R}, got {r}")));
    }
    if a0 < 2 {
        return Err(Error::InvalidParameter("A0 must be at least 2".into()));
    }
    let a = anchor_constants(r, a0);
    check_growth(&a).map_err(|(i, t)| Error::InvalidParameter(format!("growth condition fails at i={i}, t={t}")))?;
    let last = a.last().unwrap().clone();
    let m = m.unwrap_or_else(|| &last * 10u32);
    if m < &last << 1u32 {
        return Err(Error::InvalidParameter("M below 2·A_last gives negative weights".into()));
    }
    let k = 1usize << r;
    let anchors: Vec<usize> = (0..k).map(|i| 3 * r - 1 + i * (2 * r + 1)).collect();
    let mut g = Gadget {
        r,
        n: 3 * r - 1 + k * (2 * r + 1),
        edges: Vec::new(),
        kinds: Vec::new(),
        x: Vec::new(),
        anchors,
        a,
        m,
    };
    let one = BigUint::one();
    let push = |g: &mut Gadget, t: usize, h: usize, w: BigUint, kind| {
        g.edges.push((t, h, w));
        g.kinds.push(kind);
    };
    for j in 1..=r {
        let (u, v) = (g.u(j), g.v(j));
        push(&mut g, u, v, one.clone(), EdgeKind::Special);
        g.x.push(j - 1);
    }
    for j in 1..r {
        let xj = 2 * r + (j - 1);
        let (next_v, u) = (g.v(j + 1), g.u(j));
        push(&mut g, next_v, xj, one.clone(), EdgeKind::Connector);
        push(&mut g, u, xj, one.clone(), EdgeKind::Connector);
    }
    for i in 0..k {
        let horizontal = &g.m - (&g.a[i] << 1u32);
        for j in 1..=r {
            let (t, h) = (g.y(i, j - 1), g.y(i, j));
            push(&mut g, t, h, horizontal.clone(), EdgeKind::HorizontalY);
        }
        for j in 1..=r {
            let (t, h) = (g.z(i, j - 1), g.z(i, j));
            push(&mut g, t, h, horizontal.clone(), EdgeKind::HorizontalZ);
        }
        for j in 1..=r {
            let (wy, wz) = if g.bit(i, j) { (g.a[i].clone(), one.clone()) } else { (one.clone(), g.a[i].clone()) };
            let (ty, hy, tz, hz) = if i == 0 {
                (g.y(0, j), g.v(j), g.z(0, j), g.u(j))
            } else {
                (g.y(i, j), g.y(i - 1, j), g.z(i, j), g.z(i - 1, j))
            };
            push(&mut g, ty, hy, wy, EdgeKind::VerticalY);
            push(&mut g, tz, hz, wz, EdgeKind::VerticalZ);
        }
    }
    debug_assert_eq!((g.n, g.edges.len()), Gadget::expected_counts(r));
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterFailure {
    pub anchor: usize,
    /// Indices `j` (1-based) expected in the tree.
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatteringReport {
    pub pass: bool,
    pub failures: Vec<ShatterFailure>,
    /// `(anchor, vertex)` pairs where `u_j` or `v_j` has two tight in-edges.
    pub ties: Vec<(usize, usize)>,
    /// Distinct traces on `X` over all anchors.
    pub realized: usize,
}

/// Shortest-path tree of every anchor, compared against its bit string.
pub fn verify_shattering(gd: &Gadget) -> ShatteringReport {
    verify_edges(gd, &gd.edges, &gd.x)
}

fn verify_edges(gd: &Gadget, edges: &[(usize, usize, BigUint)], x: &[usize]) -> ShatteringReport {
    let mut failures = Vec::new();
    let mut ties = Vec::new();
    let mut traces = alloc::collections::BTreeSet::new();
    for (i, &root) in gd.anchors.iter().enumerate() {
        let tree = WeightedTree::build(gd.n, true, edges, root);
        let set = tree.edge_set();
        let found: Vec<usize> = (1..=gd.r).filter(|&j| set.binary_search(&x[j - 1]).is_ok()).collect();
        let expected: Vec<usize> = (1..=gd.r).filter(|&j| gd.bit(i, j)).collect();
        for j in 1..=gd.r {
            for w in [gd.u(j), gd.v(j)] {
                if tree.tight_in[w] > 1 {
                    ties.push((i, w));
                }
            }
        }
        traces.insert(found.clone());
        if found != expected {
            failures.push(ShatterFailure { anchor: i, expected, found });
        }
    }
    ShatteringReport { pass: failures.is_empty() && ties.is_empty(), realized: traces.len(), failures, ties }
}

/// Shattering on the unit subdivision, for gadgets small enough to expand.
/// One BFS per anchor; tree membership of an `X` edge and tie detection only
/// need the tight in-arcs of a few vertices, with the same (pred, edge)
/// tie-break as the weighted trees.
pub fn verify_shattering_unweighted(gd: &Gadget, cap: usize) -> Result<ShatteringReport> {
    let (sub, x) = gd.to_unweighted(cap)?;
    let g = &sub.graph;
    let mut failures = Vec::new();
    let mut ties = Vec::new();
    let mut traces = alloc::collections::BTreeSet::new();
    for (i, &root) in gd.anchors.iter().enumerate() {
        let row = g.sssp(root, false);
        let tight = |w: usize| -> Vec<(u32, u32)> {
            let Some(dw) = row.get(w).finite() else { return Vec::new() };
            g.in_arcs(w)
                .iter()
                .filter(|a| w != root && row.get(a.to as usize).finite() == Some(dw.wrapping_sub(1)))
                .map(|a| (a.to, a.edge))
                .collect()
        };
        let found: Vec<usize> = (1..=gd.r)
            .filter(|&j| {
                let head = g.edge(x[j - 1]).v as usize;
                tight(head).into_iter().min().is_some_and(|(_, e)| e as usize == x[j - 1])
            })
            .collect();
        let expected: Vec<usize> = (1..=gd.r).filter(|&j| gd.bit(i, j)).collect();
        for j in 1..=gd.r {
            for w in [gd.u(j), gd.v(j)] {
                if tight(w).len() > 1 {
                    ties.push((i, w));
                }
            }
        }
        traces.insert(found.clone());
        if found != expected {
            failures.push(ShatterFailure { anchor: i, expected, found });
        }
    }
    Ok(ShatteringReport { pass: failures.is_empty() && ties.is_empty(), realized: traces.len(), failures, ties })
}

fn tree_edges(tree: &WeightedTree<BigUint>, v: usize) -> Option<Vec<usize>> {
    tree.dist[v].as_ref()?;
    let mut out = Vec::new();
    let mut x = v;
    while let Some((p, e)) = tree.parent[x] {
        out.push(e);
        x = p;
    }
    out.reverse();
    Some(out)
}

/// Path-shape checks: `a_i → v_j` in `G ∖ {e_j}` is `j` horizontal `y` edges
/// of `Q^i_1` then `i + 1` vertical `y` edges; `a_i → u_j` in `G` is the same
/// on the `z` side. Returns the `(claim, i, j)` triples that fail.
pub fn check_path_claims(gd: &Gadget) -> Vec<(u8, usize, usize)> {
    let mut bad = Vec::new();
    let full: Vec<WeightedTree<BigUint>> =
        gd.anchors.iter().map(|&a| WeightedTree::build(gd.n, true, &gd.edges, a)).collect();
    for j in 1..=gd.r {
        let skip = gd.x[j - 1];
        let without: Vec<_> =
            gd.edges.iter().enumerate().filter(|&(e, _)| e != skip).map(|(_, e)| e.clone()).collect();
        for i in 0..gd.anchors.len() {
            let t = WeightedTree::build(gd.n, true, &without, gd.anchors[i]);
            let got: Option<Vec<(usize, usize)>> =
                tree_edges(&t, gd.v(j)).map(|p| p.iter().map(|&e| (without[e].0, without[e].1)).collect());
            if got != Some(expected_path(gd, i, j, true)) {
                bad.push((1, i, j));
            }
            let got: Option<Vec<(usize, usize)>> = tree_edges(&full[i], gd.u(j))
                .map(|p| p.iter().map(|&e| (gd.edges[e].0, gd.edges[e].1)).collect());
            if got != Some(expected_path(gd, i, j, false)) {
                bad.push((2, i, j));
            }
        }
    }
    bad
}

fn expected_path(gd: &Gadget, i: usize, j: usize, upper: bool) -> Vec<(usize, usize)> {
    let at = |t, k| if upper { gd.y(t, k) } else { gd.z(t, k) };
    let mut p: Vec<(usize, usize)> = (1..=j).map(|k| (at(i, k - 1), at(i, k))).collect();
    for t in (1..=i).rev() {
        p.push((at(t, j), at(t - 1, j)));
    }
    p.push((at(0, j), if upper { gd.v(j) } else { gd.u(j) }));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_smallest() {
        let g = build_gadget(1, 2, None).unwrap();
        assert_eq!(g.anchors.len(), 2);
        assert_eq!(g.x.len(), 1);
        let rep = verify_shattering(&g);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.realized, 2);
    }

    #[test]
    fn r2_constants() {
        let g = build_gadget(2, 2, None).unwrap();
        let a: Vec<u32> = g.a.iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(a, vec![2, 8, 32, 128]);
        assert_eq!(g.m, BigUint::from(1280u32));
        assert!(check_growth(&g.a).is_ok());
        assert!(g.m_is_large());
        let rep = verify_shattering(&g);
        assert!(rep.pass && rep.realized == 4, "{rep:?}");
    }

    #[test]
    fn counts_match_closed_form() {
        for r in 1..=4 {
            let g = build_gadget(r, 2, None).unwrap();
            assert_eq!((g.n, g.edges.len()), Gadget::expected_counts(r));
        }
    }

    #[test]
    fn growth_violation_detected() {
        let a: Vec<BigUint> = [2u32, 5, 20].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(check_growth(&a), Err((1, 0)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_gadget(0, 2, None).is_err());
        assert!(build_gadget(13, 2, None).is_err());
        assert!(build_gadget(2, 1, None).is_err());
        assert!(build_gadget(2, 2, Some(BigUint::from(10u32))).is_err());
    }

    #[test]
    fn path_claims_r3() {
        let g = build_gadget(3, 2, None).unwrap();
        assert!(check_path_claims(&g).is_empty());
    }

    #[test]
    fn trees_do_not_depend_on_m() {
        // Every anchor-to-P path uses exactly j horizontal edges, so M shifts
        // all competing path lengths equally.
        let g = build_gadget(3, 2, None).unwrap();
        let low = build_gadget(3, 2, Some(g.a.last().unwrap() << 1u32)).unwrap();
        for (&a, &b) in g.anchors.iter().zip(&low.anchors) {
            let t1 = WeightedTree::build(g.n, true, &g.edges, a).edge_set();
            let t2 = WeightedTree::build(low.n, true, &low.edges, b).edge_set();
            assert_eq!(t1, t2);
        }
    }

    #[test]
    fn gadgets_are_planar() {
        for r in 1..=5 {
            let g = build_gadget(r, 2, None).unwrap();
            assert!(crate::planarity::is_planar(&g.skeleton().unwrap()), "r={r}");
        }
    }

    #[test]
    fn unweighted_r1() {
        let g = build_gadget(1, 2, None).unwrap();
        let (sub, _) = g.to_unweighted(SUBDIVISION_CAP).unwrap();
        assert_eq!(BigUint::from(sub.graph.m()), g.total_weight());
        assert!(verify_shattering_unweighted(&g, SUBDIVISION_CAP).unwrap().pass);
    }
}

