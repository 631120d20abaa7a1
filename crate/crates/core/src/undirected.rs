//! Pattern-based algorithms for connected, unweighted, undirected graphs.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::division::{build_r_division, RDivision};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{pattern_count_cap, PatternTable};

/// Default exponent used for cap reporting (planar inputs).
pub const DEFAULT_H: u32 = 5;

fn check_input(g: &Graph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::NotUndirected);
    }
    if !g.is_unit_weight() {
        return Err(Error::NotUnitWeight);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// One BFS row per boundary vertex, `|B| × n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDistances {
    n: usize,
    vertices: Vec<usize>,
    index: Vec<u32>,
    rows: Vec<u32>,
}

impl BoundaryDistances {
    pub fn from_rows(n: usize, vertices: Vec<usize>, rows: Vec<u32>) -> Result<Self> {
        if rows.len() != vertices.len() * n {
            return Err(Error::InvalidParameter("boundary row size mismatch".into()));
        }
        let mut index = vec![u32::MAX; n];
        for (i, &b) in vertices.iter().enumerate() {
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            index[b] = i as u32;
        }
        Ok(BoundaryDistances { n, vertices, index, rows })
    }

    /// Sorted boundary vertices, one per row.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn row_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn row_of(&self, b: usize) -> Option<&[u32]> {
        let i = *self.index.get(b)?;
        (i != u32::MAX).then(|| self.row(i as usize))
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn raw(&self) -> &[u32] {
        &self.rows
    }
}

/// BFS from every boundary vertex of `div`.
pub fn boundary_distances(g: &Graph, div: &RDivision) -> Result<BoundaryDistances> {
    check_input(g)?;
    let vertices = div.boundary_vertices();
    let mut rows = Vec::with_capacity(vertices.len() * g.n());
    for &b in &vertices {
        let row = g.sssp(b, false);
        rows.extend(row.dist.iter().map(|d| d.finite().ok_or(Error::Disconnected)).collect::<Result<Vec<_>>>()?);
    }
    BoundaryDistances::from_rows(g.n(), vertices, rows)
}

/// Everything the undirected algorithms need about one cluster.
#[derive(Clone, Debug)]
pub(crate) struct ClusterTables {
    pub table: PatternTable<()>,
    /// `d(p, v)` for pattern `p` and local vertex `v`, row-major by pattern.
    pub payload: Vec<i32>,
    /// Pattern id and `d(u, s_0)` for every vertex of the graph.
    pub pid: Vec<u32>,
    pub base: Vec<u32>,
    /// Global distances between cluster vertices, `|R| × |R|`.
    pub intra: Vec<u32>,
}

pub(crate) fn cluster_tables(g: &Graph, div: &RDivision, bd: &BoundaryDistances, cid: usize) -> ClusterTables {
    let c = &div.clusters[cid];
    let n = g.n();
    let size = c.len();
    let b = c.boundary_sequence.len();
    let rows: Vec<&[u32]> = c.boundary_sequence.iter().map(|&s| bd.row_of(s).expect("boundary row")).collect();
    let mut table = PatternTable::new(b);
    let mut payload = Vec::new();
    let mut pid = vec![0u32; n];
    let mut base = vec![0u32; n];
    let mut key = vec![0i32; b];
    if b > 0 {
        // to_v[i * size + lv] = d(s_i, v)
        let to_v: Vec<i32> =
            rows.iter().flat_map(|row| c.vertices.iter().map(move |&v| row[v] as i32)).collect();
        for u in 0..n {
            let d0 = rows[0][u];
            for (i, row) in rows.iter().enumerate() {
                key[i] = row[u] as i32 - d0 as i32;
                debug_assert!(key[i].unsigned_abs() as usize <= size.saturating_sub(1));
            }
            let (id, fresh) = table.insert_with(&key, || ());
            if fresh {
                let start = payload.len();
                payload.extend_from_slice(&to_v[..size]);
                let slot = &mut payload[start..];
                for (i, &k) in key.iter().enumerate().skip(1) {
                    let col = &to_v[i * size..(i + 1) * size];
                    for (p, &d) in slot.iter_mut().zip(col) {
                        *p = (*p).min(d + k);
                    }
                }
            }
            pid[u] = id;
            base[u] = d0;
        }
    }
    let local = div.local_graph(g, cid);
    let mut intra = vec![0u32; size * size];
    for lu in 0..size {
        let dr = local.bfs(lu, false);
        let u = c.vertices[lu];
        let row = &mut intra[lu * size..(lu + 1) * size];
        for lv in 0..size {
            let inside = dr[lv].finite().unwrap_or(u32::MAX);
            row[lv] = if b > 0 {
                let p = pid[u] as usize;
                let via = (base[u] as i64 + payload[p * size + lv] as i64) as u32;
                inside.min(via)
            } else {
                inside
            };
        }
    }
    ClusterTables { table, payload, pid, base, intra }
}

/// Per-cluster size report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterStats {
    pub id: usize,
    pub vertices: usize,
    pub boundary: usize,
    pub patterns: usize,
    /// Sauer–Shelah cap on distinct patterns for VC dimension `h − 1`.
    pub cap: u128,
}

impl ClusterStats {
    pub fn within_cap(&self) -> bool {
        self.patterns as u128 <= self.cap
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccResult {
    pub ecc: Vec<u32>,
    pub diameter: u32,
}

/// Eccentricities of every vertex, using an r-division with cluster size `r`.
pub fn eccentricities(g: &Graph, r: usize) -> Result<EccResult> {
    check_input(g)?;
    let div = build_r_division(g, r)?;
    eccentricities_with(g, &div)
}

pub fn eccentricities_with(g: &Graph, div: &RDivision) -> Result<EccResult> {
    let bd = boundary_distances(g, div)?;
    let n = g.n();
    let mut ecc = vec![0u32; n];
    for c in &div.clusters {
        let t = cluster_tables(g, div, &bd, c.id);
        let size = c.len();
        let furthest: Vec<i32> =
            t.payload.chunks(size.max(1)).map(|row| row.iter().copied().max().unwrap_or(0)).collect();
        for u in 0..n {
            let delta = if div.owner(u) == c.id {
                let lu = div.local_index(u);
                t.intra[lu * size..(lu + 1) * size].iter().copied().max().unwrap_or(0)
            } else {
                (t.base[u] as i64 + furthest[t.pid[u] as usize] as i64) as u32
            };
            ecc[u] = ecc[u].max(delta);
        }
    }
    let diameter = ecc.iter().copied().max().unwrap_or(0);
    Ok(EccResult { ecc, diameter })
}

/// Half the sum of all ordered pairwise distances.
pub fn wiener_index(g: &Graph, r: usize) -> Result<u64> {
    check_input(g)?;
    let div = build_r_division(g, r)?;
    wiener_index_with(g, &div)
}

pub fn wiener_index_with(g: &Graph, div: &RDivision) -> Result<u64> {
    let bd = boundary_distances(g, div)?;
    let n = g.n();
    // Rows of boundary vertices cover every pair with a boundary source.
    let mut ordered: u64 = bd.raw().iter().map(|&d| u64::from(d)).sum();
    for c in &div.clusters {
        let t = cluster_tables(g, div, &bd, c.id);
        let size = c.len();
        let interior: Vec<usize> = (0..size).filter(|&lv| div.boundary_index(c.vertices[lv]).is_none()).collect();
        if interior.is_empty() {
            continue;
        }
        for &lu in &interior {
            ordered += t.intra[lu * size..(lu + 1) * size].iter().map(|&d| u64::from(d)).sum::<u64>();
        }
        if c.boundary.is_empty() {
            continue;
        }
        let sums: Vec<i64> = t
            .payload
            .chunks(size)
            .map(|row| interior.iter().map(|&lv| i64::from(row[lv])).sum())
            .collect();
        for v in 0..n {
            if div.owner(v) != c.id {
                let s = interior.len() as i64 * i64::from(t.base[v]) + sums[t.pid[v] as usize];
                ordered += s as u64;
            }
        }
    }
    Ok(ordered / 2)
}

/// Exact distance oracle with constant-time queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedOracle {
    pub(crate) h: u32,
    pub(crate) division: RDivision,
    pub(crate) clusters: Vec<OracleCluster>,
    /// `(pattern id, d(u, s_0))` indexed by `u * clusters + R`.
    pub(crate) records: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OracleCluster {
    /// Pattern keys, `patterns × b`, in id order.
    pub keys: Vec<i32>,
    pub payload: Vec<i32>,
    pub intra: Vec<u32>,
}

impl UndirectedOracle {
    pub fn build(g: &Graph, r: usize) -> Result<Self> {
        check_input(g)?;
        let div = build_r_division(g, r)?;
        Self::build_with(g, div)
    }

    pub fn build_with(g: &Graph, division: RDivision) -> Result<Self> {
        let boundary = boundary_distances(g, &division)?;
        let n = g.n();
        let k = division.clusters.len();
        let mut records = vec![(0u32, 0u32); n * k];
        let mut clusters = Vec::with_capacity(k);
        for c in &division.clusters {
            let t = cluster_tables(g, &division, &boundary, c.id);
            for u in 0..n {
                records[u * k + c.id] = (t.pid[u], t.base[u]);
            }
            let keys = t.table.iter().flat_map(|(key, _)| key.iter().copied()).collect();
            clusters.push(OracleCluster { keys, payload: t.payload, intra: t.intra });
        }
        Ok(UndirectedOracle { h: DEFAULT_H, division, clusters, records })
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

    pub fn query(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        let rv = self.division.owner(v);
        let lv = self.division.local_index(v);
        let c = &self.clusters[rv];
        let size = self.division.clusters[rv].len();
        if self.division.owner(u) == rv {
            return c.intra[self.division.local_index(u) * size + lv];
        }
        let (pid, base) = self.records[u * self.clusters.len() + rv];
        (i64::from(base) + i64::from(c.payload[pid as usize * size + lv])) as u32
    }

    pub fn cluster_stats(&self) -> Vec<ClusterStats> {
        self.division
            .clusters
            .iter()
            .zip(&self.clusters)
            .map(|(c, oc)| {
                let b = c.boundary.len();
                ClusterStats {
                    id: c.id,
                    vertices: c.len(),
                    boundary: b,
                    patterns: if b == 0 { 0 } else { oc.keys.len() / b },
                    cap: pattern_count_cap(b, c.len(), self.h - 1),
                }
            })
            .collect()
    }

    pub fn pattern_count(&self) -> usize {
        self.cluster_stats().iter().map(|s| s.patterns).sum()
    }

    /// Bytes held by the query tables.
    pub fn space_bytes(&self) -> usize {
        let tables: usize =
            self.clusters.iter().map(|c| 4 * (c.keys.len() + c.payload.len() + c.intra.len())).sum();
        tables + 8 * self.records.len() + 16 * self.n()
    }
}

/// Distinct distance tuples `⟨d(v,s_0), …, d(v,s_{k−1})⟩` over all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCompression {
    pub terminals: Vec<usize>,
    pub tuples: Vec<Vec<u32>>,
    pub tuple_of: Vec<u32>,
    pub diameter: u32,
    /// `|S|^(h−1) · D^h`.
    pub cap: u128,
}

impl TupleCompression {
    pub fn tuple(&self, v: usize) -> &[u32] {
        &self.tuples[self.tuple_of[v] as usize]
    }

    pub fn within_cap(&self) -> bool {
        self.tuples.len() as u128 <= self.cap
    }
}

/// `diameter` is the graph diameter if known; otherwise the largest distance
/// seen from the terminals is used, which is a lower bound.
pub fn distance_tuples(g: &Graph, terminals: &[usize], diameter: Option<u32>, h: u32) -> Result<TupleCompression> {
    check_input(g)?;
    if terminals.is_empty() {
        return Err(Error::InvalidParameter("no terminals".into()));
    }
    let rows = terminals
        .iter()
        .map(|&s| {
            if s >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
            }
            Ok(g.sssp(s, false))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut tuples = Vec::new();
    let mut tuple_of = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let t: Vec<u32> = rows.iter().map(|r| r.get(v).finite().expect("connected")).collect();
        let next = tuples.len() as u32;
        let id = *ids.entry(t.clone()).or_insert_with(|| {
            tuples.push(t);
            next
        });
        tuple_of.push(id);
    }
    let d = diameter.unwrap_or_else(|| rows.iter().map(|r| r.max_finite()).max().unwrap_or(0));
    let cap = (terminals.len() as u128)
        .saturating_pow(h.saturating_sub(1))
        .saturating_mul(u128::from(d).saturating_pow(h));
    Ok(TupleCompression { terminals: terminals.to_vec(), tuples, tuple_of, diameter: d, cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn boundary_rows_match_bfs() {
        let g = generate::path(10).unwrap();
        let div = build_r_division(&g, 3).unwrap();
        let bd = boundary_distances(&g, &div).unwrap();
        assert_eq!(bd.row_count(), div.boundary_vertices().len());
        for &b in bd.vertices() {
            let expect: Vec<u32> = g.sssp(b, false).dist.iter().map(|d| d.finite().unwrap()).collect();
            assert_eq!(bd.row_of(b).unwrap(), expect.as_slice());
        }
        let whole = build_r_division(&g, 10).unwrap();
        assert_eq!(boundary_distances(&g, &whole).unwrap().row_count(), 0);
    }

    #[test]
    fn ecc_small() {
        let c6 = generate::cycle(6).unwrap();
        assert_eq!(eccentricities(&c6, 3).unwrap().ecc, vec![3; 6]);
        let p5 = generate::path(5).unwrap();
        let e = eccentricities(&p5, 2).unwrap();
        assert_eq!(e.ecc, vec![4, 3, 2, 3, 4]);
        assert_eq!(e.diameter, 4);
    }

    #[test]
    fn wiener_small() {
        assert_eq!(wiener_index(&generate::path(4).unwrap(), 2).unwrap(), 10);
        assert_eq!(wiener_index(&generate::cycle(5).unwrap(), 2).unwrap(), 15);
        assert_eq!(wiener_index(&generate::cycle(5).unwrap(), 5).unwrap(), 15);
    }

    #[test]
    fn oracle_small_exact() {
        let g = generate::grid(6, 5).unwrap();
        let o = UndirectedOracle::build(&g, 7).unwrap();
        let ap = g.all_pairs().unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(Some(o.query(u, v)), ap.get(u, v).finite(), "{u} {v}");
            }
        }
        assert!(o.cluster_stats().iter().all(|s| s.within_cap()));
    }

    #[test]
    fn rejects_bad_input() {
        let dis = Graph::unweighted(3, false, [(0, 1)]).unwrap();
        assert_eq!(eccentricities(&dis, 2), Err(Error::Disconnected));
        assert_eq!(eccentricities(&generate::directed_cycle(3).unwrap(), 2), Err(Error::NotUndirected));
        let w = Graph::new(2, false, [(0, 1, 2)]).unwrap();
        assert_eq!(wiener_index(&w, 2), Err(Error::NotUnitWeight));
    }

    #[test]
    fn tuples() {
        let c6 = generate::cycle(6).unwrap();
        let t = distance_tuples(&c6, &[0], None, 5).unwrap();
        assert_eq!(t.tuples.len(), 4);
        let g = generate::grid(6, 6).unwrap();
        let s = [0, 5, 30, 35];
        let t = distance_tuples(&g, &s, Some(10), 5).unwrap();
        assert!(t.within_cap());
        for v in 0..g.n() {
            let expect: Vec<u32> = s.iter().map(|&x| g.sssp(x, false).get(v).finite().unwrap()).collect();
            assert_eq!(t.tuple(v), expect.as_slice());
        }
    }
}
