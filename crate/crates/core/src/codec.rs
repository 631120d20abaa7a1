//! Versioned byte containers for the oracles.
//!
//! Layout: 4-byte magic, little-endian `u32` format version, then a postcard
//! body with sections for the header, division, per-cluster tables and
//! per-vertex records. Pattern keys are stored in id order, so the trie can
//! be rebuilt from them. Boundary distance rows are build-time data and are
//! not stored. Loading a container with a different version is refused
//! before the body is read.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::directed::{DirectedCluster, DirectedOracle};
use crate::division::RDivision;
use crate::error::{Error, Result};
use crate::undirected::{OracleCluster, UndirectedOracle};

pub const MAGIC: [u8; 4] = *b"MVCO";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleKind {
    Undirected,
    Directed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub kind: OracleKind,
    pub n: u64,
    pub r: u64,
    pub h: u32,
}

#[derive(Serialize, Deserialize)]
struct DivisionSection {
    clusters: Vec<(Vec<u32>, Vec<u32>)>,
}

#[derive(Serialize, Deserialize)]
struct UndirectedCluster {
    keys: Vec<i32>,
    payload: Vec<i32>,
    intra: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct UndirectedBody {
    header: Header,
    division: DivisionSection,
    clusters: Vec<UndirectedCluster>,
    records: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RestrictionSection {
    width: u32,
    sets: Vec<Vec<u64>>,
    reach_dist: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DirectedClusterSection {
    restrictions: RestrictionSection,
    lists: Vec<Vec<(u32, u32)>>,
    intra: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct DirectedBody {
    header: Header,
    division: DivisionSection,
    clusters: Vec<DirectedClusterSection>,
    records: Vec<(u32, u32)>,
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Decode(what.to_string()))
    }
}

fn division_section(div: &RDivision) -> DivisionSection {
    let to32 = |v: &[usize]| v.iter().map(|&x| x as u32).collect::<Vec<u32>>();
    DivisionSection {
        clusters: div.clusters.iter().map(|c| (to32(&c.vertices), to32(&c.boundary_sequence))).collect(),
    }
}

fn read_division(sec: &DivisionSection, h: &Header) -> Result<RDivision> {
    let to_usize = |v: &[u32]| v.iter().map(|&x| x as usize).collect::<Vec<usize>>();
    let parts = sec.clusters.iter().map(|(v, s)| (to_usize(v), to_usize(s))).collect();
    RDivision::from_clusters(h.n as usize, h.r as usize, parts)
}

fn frame(body: &impl Serialize) -> Vec<u8> {
    let mut out = Vec::from(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend(postcard::to_allocvec(body).expect("in-memory serialization"));
    out
}

/// Checks magic and version; returns the body bytes.
fn unframe(bytes: &[u8]) -> Result<&[u8]> {
    ensure(bytes.len() >= 8 && bytes[..4] == MAGIC, "not an oracle container")?;
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch { found: version, expected: FORMAT_VERSION });
    }
    Ok(&bytes[8..])
}

fn parse<'a, T: Deserialize<'a>>(body: &'a [u8]) -> Result<T> {
    postcard::from_bytes(body).map_err(|e| Error::Decode(format!("{e}")))
}

/// Reads only the header of a container.
pub fn peek(bytes: &[u8]) -> Result<Header> {
    let body = unframe(bytes)?;
    postcard::take_from_bytes::<Header>(body).map(|(h, _)| h).map_err(|e| Error::Decode(format!("{e}")))
}

pub fn encode_undirected(o: &UndirectedOracle) -> Vec<u8> {
    let n = o.n();
    let body = UndirectedBody {
        header: Header { kind: OracleKind::Undirected, n: n as u64, r: o.r() as u64, h: o.h },
        division: division_section(&o.division),
        clusters: o
            .clusters
            .iter()
            .map(|c| UndirectedCluster { keys: c.keys.clone(), payload: c.payload.clone(), intra: c.intra.clone() })
            .collect(),
        records: o.records.clone(),
    };
    frame(&body)
}

pub fn decode_undirected(bytes: &[u8]) -> Result<UndirectedOracle> {
    let body: UndirectedBody = parse(unframe(bytes)?)?;
    let h = body.header;
    ensure(h.kind == OracleKind::Undirected, "container holds a directed oracle")?;
    let n = h.n as usize;
    let division = read_division(&body.division, &h)?;
    let k = division.clusters.len();
    ensure(body.clusters.len() == k && body.records.len() == n * k, "table counts")?;
    let mut clusters = Vec::with_capacity(k);
    for (c, sec) in division.clusters.iter().zip(body.clusters) {
        let (size, b) = (c.len(), c.boundary.len());
        ensure(sec.intra.len() == size * size, "intra table size")?;
        let patterns = if b == 0 {
            ensure(sec.keys.is_empty() && sec.payload.is_empty(), "patterns without boundary")?;
            0
        } else {
            ensure(sec.keys.len() % b == 0, "pattern key length")?;
            sec.keys.len() / b
        };
        ensure(sec.payload.len() == patterns * size, "payload size")?;
        for u in 0..n {
            let (pid, _) = body.records[u * k + c.id];
            ensure(b == 0 || (pid as usize) < patterns, "record pattern id")?;
        }
        clusters.push(OracleCluster { keys: sec.keys, payload: sec.payload, intra: sec.intra });
    }
    Ok(UndirectedOracle { h: h.h, division, clusters, records: body.records })
}

pub fn encode_directed(o: &DirectedOracle) -> Vec<u8> {
    let n = o.n();
    let body = DirectedBody {
        header: Header { kind: OracleKind::Directed, n: n as u64, r: o.r() as u64, h: o.h },
        division: division_section(&o.division),
        clusters: o
            .division
            .clusters
            .iter()
            .zip(&o.clusters)
            .map(|(c, dc)| DirectedClusterSection {
                restrictions: RestrictionSection {
                    width: c.len() as u32,
                    sets: dc.restrictions.iter().map(|y| y.words().to_vec()).collect(),
                    reach_dist: dc.reach_dist.clone(),
                },
                lists: dc.lists.clone(),
                intra: dc.intra.clone(),
            })
            .collect(),
        records: o.records.clone(),
    };
    frame(&body)
}

pub fn decode_directed(bytes: &[u8]) -> Result<DirectedOracle> {
    let body: DirectedBody = parse(unframe(bytes)?)?;
    let h = body.header;
    ensure(h.kind == OracleKind::Directed, "container holds an undirected oracle")?;
    let n = h.n as usize;
    let division = read_division(&body.division, &h)?;
    let k = division.clusters.len();
    ensure(body.clusters.len() == k && body.records.len() == n * k, "table counts")?;
    let mut clusters = Vec::with_capacity(k);
    for (c, sec) in division.clusters.iter().zip(body.clusters) {
        let size = c.len();
        let res = sec.restrictions;
        ensure(res.width as usize == size, "restriction width")?;
        let restrictions = res
            .sets
            .into_iter()
            .map(|w| BitSet::from_words(size, w).ok_or_else(|| Error::Decode("restriction bits".into())))
            .collect::<Result<Vec<_>>>()?;
        ensure(res.reach_dist.len() == restrictions.len() * size, "restriction payload size")?;
        ensure(sec.intra.len() == size * size, "intra table size")?;
        ensure(
            sec.lists.iter().flatten().all(|&(_, rid)| (rid as usize) < restrictions.len()),
            "restriction id",
        )?;
        for u in 0..n {
            let (lid, _) = body.records[u * k + c.id];
            ensure(lid == u32::MAX || (lid as usize) < sec.lists.len(), "record list id")?;
        }
        clusters.push(DirectedCluster { restrictions, reach_dist: res.reach_dist, lists: sec.lists, intra: sec.intra });
    }
    Ok(DirectedOracle { h: h.h, division, clusters, records: body.records })
}
