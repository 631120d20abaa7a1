//! Either oracle behind one interface, with file persistence.

use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use minorvc_core::codec::{self, OracleKind};
use minorvc_core::directed::DirectedOracle;
use minorvc_core::undirected::UndirectedOracle;
use minorvc_core::{Dist, Graph, RDivision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyOracle {
    Undirected(UndirectedOracle),
    Directed(DirectedOracle),
}

impl AnyOracle {
    /// Picks the oracle matching the graph's directedness.
    pub fn build(g: &Graph, division: RDivision) -> minorvc_core::Result<Self> {
        Ok(if g.is_directed() {
            AnyOracle::Directed(DirectedOracle::build_with(g, division)?)
        } else {
            AnyOracle::Undirected(UndirectedOracle::build_with(g, division)?)
        })
    }

    pub fn kind(&self) -> OracleKind {
        match self {
            AnyOracle::Undirected(_) => OracleKind::Undirected,
            AnyOracle::Directed(_) => OracleKind::Directed,
        }
    }

    pub fn n(&self) -> usize {
        self.division().n()
    }

    pub fn division(&self) -> &RDivision {
        match self {
            AnyOracle::Undirected(o) => o.division(),
            AnyOracle::Directed(o) => o.division(),
        }
    }

    #[inline]
    pub fn query(&self, u: usize, v: usize) -> Dist {
        match self {
            AnyOracle::Undirected(o) => Dist::Finite(o.query(u, v)),
            AnyOracle::Directed(o) => o.query(u, v),
        }
    }

    pub fn space_bytes(&self) -> usize {
        match self {
            AnyOracle::Undirected(o) => o.space_bytes(),
            AnyOracle::Directed(o) => o.space_bytes(),
        }
    }

    /// Distinct patterns (undirected) or ball restrictions (directed),
    /// summed over clusters.
    pub fn pattern_count(&self) -> usize {
        match self {
            AnyOracle::Undirected(o) => o.pattern_count(),
            AnyOracle::Directed(o) => o.restriction_counts().iter().sum(),
        }
    }

    /// Whether every cluster's count is within its Sauer–Shelah cap.
    pub fn cap_ok(&self) -> bool {
        match self {
            AnyOracle::Undirected(o) => o.cluster_stats().iter().all(|c| c.within_cap()),
            AnyOracle::Directed(o) => o.restriction_cap_violations().is_empty(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            AnyOracle::Undirected(o) => codec::encode_undirected(o),
            AnyOracle::Directed(o) => codec::encode_directed(o),
        }
    }

    pub fn decode(bytes: &[u8]) -> minorvc_core::Result<Self> {
        Ok(match codec::peek(bytes)?.kind {
            OracleKind::Undirected => AnyOracle::Undirected(codec::decode_undirected(bytes)?),
            OracleKind::Directed => AnyOracle::Directed(codec::decode_directed(bytes)?),
        })
    }

    /// Writes the container; returns its size.
    pub fn save(&self, path: &Path) -> anyhow::Result<usize> {
        let bytes = self.encode();
        std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?;
        Ok(bytes.len())
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Self::decode(&bytes).with_context(|| format!("loading {}", path.display()))
    }
}

pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
}

/// Answers plus mean latency in nanoseconds.
pub fn timed_queries(o: &AnyOracle, pairs: &[(usize, usize)]) -> (Vec<Dist>, f64) {
    let start = Instant::now();
    let answers: Vec<Dist> = pairs.iter().map(|&(u, v)| o.query(u, v)).collect();
    let ns = start.elapsed().as_nanos() as f64 / pairs.len().max(1) as f64;
    (answers, ns)
}

/// One row of the scaling CSV. Column order is part of the output format.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub r: usize,
    pub directed: bool,
    pub clusters: usize,
    pub build_ms: f64,
    pub query_ns: f64,
    pub space_bytes: usize,
    pub pattern_count: usize,
    pub boundary_sum: usize,
    pub cap_ok: bool,
}

pub const BENCH_HEADER: &str =
    "n,r,directed,clusters,build_ms,query_ns,space_bytes,pattern_count,boundary_sum,cap_ok";

pub fn bench_row(g: &Graph, r: usize, queries: usize, seed: u64) -> anyhow::Result<BenchRow> {
    let start = Instant::now();
    let division = minorvc_core::division::build_r_division(g, r)?;
    let o = AnyOracle::build(g, division)?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    let pairs = random_pairs(g.n(), queries, seed);
    let (_, query_ns) = timed_queries(&o, &pairs);
    let q = o.division().quality();
    Ok(BenchRow {
        n: g.n(),
        r,
        directed: g.is_directed(),
        clusters: q.clusters,
        build_ms,
        query_ns,
        space_bytes: o.space_bytes(),
        pattern_count: o.pattern_count(),
        boundary_sum: q.boundary_sum,
        cap_ok: o.cap_ok(),
    })
}
