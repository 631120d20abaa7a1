//! Planarity test for the underlying undirected graph (Demoucron, Malgrange
//! and Pertuiset, applied per biconnected block). Quadratic-ish; meant for
//! validating generated test inputs, not for large graphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::graph::Graph;

/// Whether the underlying simple undirected graph of `g` is planar.
pub fn is_planar(g: &Graph) -> bool {
    let mut pairs = HashSet::new();
    for e in g.edges() {
        let (a, b) = (e.u.min(e.v) as usize, e.u.max(e.v) as usize);
        pairs.insert((a, b));
    }
    let mut edges: Vec<(usize, usize)> = pairs.into_iter().collect();
    edges.sort_unstable();
    let n = g.n();
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    blocks(n, &edges).into_iter().all(|b| block_planar(&b))
}

/// Edge lists of the biconnected components, with vertices relabelled `0..k`.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut estack: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent edge, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, pe, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(relabel(edges, &comp));
                    }
                }
            }
        }
    }
    out
}

fn relabel(edges: &[(usize, usize)], ids: &[usize]) -> Vec<(usize, usize)> {
    let mut map = hashbrown::HashMap::new();
    let mut id = |v: usize| {
        let next = map.len();
        *map.entry(v).or_insert(next)
    };
    ids.iter().map(|&e| (id(edges[e].0), id(edges[e].1))).collect()
}

fn block_planar(edges: &[(usize, usize)]) -> bool {
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    if n < 5 || edges.len() < 9 {
        return true;
    }
    if edges.len() > 3 * n - 6 {
        return false;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut emb_v = vec![false; n];
    let mut emb_e = vec![false; edges.len()];
    let cycle = find_cycle(&adj);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.clone()];
    let mut vface: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &v) in cycle.iter().enumerate() {
        emb_v[v] = true;
        vface[v] = vec![0, 1];
        let w = cycle[(k + 1) % cycle.len()];
        let e = adj[v].iter().find(|&&(x, _)| x == w).unwrap().1;
        emb_e[e] = true;
    }
    let mut remaining = edges.len() - cycle.len();
    while remaining > 0 {
        let frags = fragments(&adj, edges, &emb_v, &emb_e);
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, f) in frags.iter().enumerate() {
            let seed = *f.attachments.iter().min_by_key(|&&a| vface[a].len()).unwrap();
            let admissible: Vec<usize> = vface[seed]
                .iter()
                .copied()
                .filter(|&face| f.attachments.iter().all(|&a| vface[a].contains(&face)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = chosen.expect("nonempty fragment list");
        let (path, path_edges) = frag_path(&adj, &emb_v, &frags[fi]);
        for &e in &path_edges {
            emb_e[e] = true;
        }
        remaining -= path_edges.len();
        split_face(&mut faces, &mut vface, face, &path);
        for &v in &path {
            emb_v[v] = true;
        }
    }
    true
}

fn find_cycle(adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    while let Some(&mut (v, pe, ref mut next)) = stack.last_mut() {
        if *next == adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, e) = adj[v][*next];
        *next += 1;
        if e == pe {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, e, 0));
        } else if depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return cyc;
        }
    }
    unreachable!("biconnected block with at least 3 vertices has a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a single chord.
    inner: Vec<usize>,
    chord: Option<usize>,
}

fn fragments(adj: &[Vec<(usize, usize)>], edges: &[(usize, usize)], emb_v: &[bool], emb_e: &[bool]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !emb_e[i] && emb_v[a] && emb_v[b] {
            out.push(Fragment { attachments: vec![a, b], inner: Vec::new(), chord: Some(i) });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut att = Vec::new();
        let mut i = 0;
        while i < inner.len() {
            let x = inner[i];
            i += 1;
            for &(y, _) in &adj[x] {
                if emb_v[y] {
                    att.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    inner.push(y);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment { attachments: att, inner, chord: None });
    }
    out
}

/// A path through the fragment between two distinct attachments, as
/// vertices (endpoints included) and edge ids.
fn frag_path(adj: &[Vec<(usize, usize)>], emb_v: &[bool], f: &Fragment) -> (Vec<usize>, Vec<usize>) {
    if let Some(e) = f.chord {
        return (f.attachments.clone(), vec![e]);
    }
    let a = f.attachments[0];
    let inner: HashSet<usize> = f.inner.iter().copied().collect();
    let mut prev: hashbrown::HashMap<usize, (usize, usize)> = hashbrown::HashMap::new();
    let mut q = VecDeque::new();
    for &(y, e) in &adj[a] {
        if inner.contains(&y) && !prev.contains_key(&y) {
            prev.insert(y, (a, e));
            q.push_back(y);
        }
    }
    while let Some(x) = q.pop_front() {
        for &(y, e) in &adj[x] {
            if emb_v[y] && y != a {
                let mut verts = vec![y, x];
                let mut es = vec![e];
                let mut cur = x;
                while cur != a {
                    let (p, pe) = prev[&cur];
                    es.push(pe);
                    verts.push(p);
                    cur = p;
                }
                verts.reverse();
                es.reverse();
                return (verts, es);
            }
            if inner.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, (x, e));
                q.push_back(y);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

fn split_face(faces: &mut Vec<Vec<usize>>, vface: &mut [Vec<usize>], face: usize, path: &[usize]) {
    let cyc = faces[face].clone();
    let a = path[0];
    let b = *path.last().unwrap();
    let len = cyc.len();
    let ia = cyc.iter().position(|&v| v == a).unwrap();
    let ib = cyc.iter().position(|&v| v == b).unwrap();
    let walk = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = from;
        loop {
            out.push(cyc[k]);
            if k == to {
                break;
            }
            k = (k + 1) % len;
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = walk(ia, ib);
    f1.extend(interior.iter().rev());
    let mut f2 = walk(ib, ia);
    f2.extend(interior.iter());
    let new_id = faces.len();
    for &v in &cyc {
        vface[v].retain(|&x| x != face);
    }
    for &v in &f1 {
        vface[v].push(face);
    }
    for &v in &f2 {
        vface[v].push(new_id);
    }
    faces[face] = f1;
    faces.push(f2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn complete(n: usize) -> Graph {
        Graph::unweighted(n, false, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        let k33 = Graph::unweighted(6, false, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert!(!is_planar(&k33));
        assert!(is_planar(&generate::grid(7, 7).unwrap()));
    }

    #[test]
    fn subdivided_k33_is_not_planar() {
        // Each K3,3 edge split by a midpoint: 9 + 6 vertices, 18 edges.
        let mut e = Vec::new();
        let mut next = 6;
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, next));
                e.push((next, b));
                next += 1;
            }
        }
        assert!(!is_planar(&Graph::unweighted(next, false, e).unwrap()));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        assert!(!is_planar(&Graph::unweighted(10, false, e).unwrap()));
    }

    #[test]
    fn random_planar_is_planar() {
        for seed in 0..5 {
            let g = generate::random_planar_with(300, 1.0, seed).unwrap();
            assert!(is_planar(&g));
        }
    }
}
