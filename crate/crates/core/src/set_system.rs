//! Set families over small graphs, shattering and VC-dimension search.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the exhaustive constructions accept by default.
pub const EXHAUSTIVE_CAP: usize = 64;

/// Largest search size accepted by [`vc_dimension`].
pub const MAX_VC_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroundElement {
    Vertex(usize),
    /// `(i, delta)` with `i` counted from 1.
    Pair { i: usize, delta: i64 },
    Edge(usize),
}

/// Where a set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetLabel {
    None,
    Ball { center: usize, radius: u32 },
    Vertex(usize),
    Tree { root: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<GroundElement>,
    sets: Vec<BitSet>,
    labels: Vec<SetLabel>,
}

impl SetFamily {
    /// Builds a deduplicated family; the first label of a repeated set wins.
    pub fn new(ground: Vec<GroundElement>, sets: impl IntoIterator<Item = (BitSet, SetLabel)>) -> Self {
        let width = ground.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut labels = Vec::new();
        for (s, l) in sets {
            assert_eq!(s.width(), width, "set width differs from ground size");
            if seen.insert(s.clone()) {
                out.push(s);
                labels.push(l);
            }
        }
        SetFamily { ground, sets: out, labels }
    }

    /// Unlabelled family over vertices `0..n`.
    pub fn from_index_sets(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let ground = (0..n).map(GroundElement::Vertex).collect();
        Self::new(ground, sets.into_iter().map(|s| (BitSet::from_indices(n, s), SetLabel::None)))
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[GroundElement] {
        &self.ground
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn labels(&self) -> &[SetLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Whether every subset of `ys` arises as `Y ∩ ys` for a member `Y`.
    pub fn shatters(&self, ys: &[usize]) -> bool {
        assert!(ys.len() <= MAX_VC_CAP, "shattering test limited to {MAX_VC_CAP} elements");
        let need = 1usize << ys.len();
        if self.sets.len() < need {
            return false;
        }
        let mut hit = [0u64; 2];
        let mut count = 0;
        for s in &self.sets {
            let t = s.trace(ys) as usize;
            let bit = 1u64 << (t % 64);
            if hit[t / 64] & bit == 0 {
                hit[t / 64] |= bit;
                count += 1;
                if count == need {
                    return true;
                }
            }
        }
        false
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::TooLarge { what: "exhaustive set system", n: g.n(), cap });
    }
    Ok(())
}

/// Balls `B(v, r)` for every center and every realized radius. On digraphs
/// the balls are out-balls `{u : d(v→u) ≤ r}`.
pub fn ball_system(g: &Graph) -> Result<SetFamily> {
    check_cap(g, EXHAUSTIVE_CAP)?;
    let n = g.n();
    let mut sets = Vec::new();
    for v in 0..n {
        let row = g.sssp(v, false);
        let mut order: Vec<(u32, usize)> =
            (0..n).filter_map(|u| row.get(u).finite().map(|d| (d, u))).collect();
        order.sort_unstable();
        let mut ball = BitSet::new(n);
        for (k, &(d, u)) in order.iter().enumerate() {
            ball.insert(u);
            if order.get(k + 1).is_none_or(|&(d2, _)| d2 != d) {
                sets.push((ball.clone(), SetLabel::Ball { center: v, radius: d }));
            }
        }
    }
    let ground = (0..n).map(GroundElement::Vertex).collect();
    Ok(SetFamily::new(ground, sets))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpKind {
    /// Differences against the first terminal `s_0`.
    Hat,
    /// Differences against the previous terminal `s_{i-1}`; experimental.
    LiParter,
}

#[derive(Clone, Debug)]
pub struct LpFamily {
    pub family: SetFamily,
    /// Vertices left out because a needed distance is unreachable.
    pub excluded: Vec<usize>,
}

/// The terminal-difference family over ground `[k-1] × M`.
///
/// For `LpKind::Hat` a vertex `v` contributes `{(i, Δ) : d(v,s_i) − d(v,s_0) ≤ Δ}`
/// (with `d(v→·)` on digraphs). Vertices that cannot reach `s_0` are excluded;
/// an unreachable `s_i` makes the difference `+∞`, so no `(i, ·)` is included.
/// For `LpKind::LiParter` any unreachable terminal excludes the vertex.
pub fn lp_system(g: &Graph, terminals: &[usize], deltas: &[i64], kind: LpKind) -> Result<LpFamily> {
    check_cap(g, EXHAUSTIVE_CAP)?;
    if terminals.len() < 2 {
        return Err(Error::InvalidParameter("need at least two terminals".into()));
    }
    if deltas.is_empty() {
        return Err(Error::InvalidParameter("delta list is empty".into()));
    }
    let mut distinct = BTreeSet::new();
    for &s in terminals {
        if s >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
        }
        if !distinct.insert(s) {
            return Err(Error::InvalidParameter(format!("duplicate terminal {s}")));
        }
    }
    let mut m: Vec<i64> = deltas.to_vec();
    m.sort_unstable();
    m.dedup();
    let k = terminals.len();
    let ground: Vec<GroundElement> = (1..k)
        .flat_map(|i| m.iter().map(move |&delta| GroundElement::Pair { i, delta }))
        .collect();
    let to_s: Vec<_> = terminals.iter().map(|&s| g.sssp(s, true)).collect();
    let mut sets = Vec::new();
    let mut excluded = Vec::new();
    for v in 0..g.n() {
        let d: Vec<Option<i64>> = to_s.iter().map(|row| row.get(v).finite().map(i64::from)).collect();
        let usable = match kind {
            LpKind::Hat => d[0].is_some(),
            LpKind::LiParter => d.iter().all(Option::is_some),
        };
        if !usable {
            log::debug!("lp system: excluding vertex {v}, terminal unreachable");
            excluded.push(v);
            continue;
        }
        let mut set = BitSet::new(ground.len());
        for i in 1..k {
            let reference = match kind {
                LpKind::Hat => d[0],
                LpKind::LiParter => d[i - 1],
            };
            let Some(diff) = d[i].zip(reference).map(|(a, b)| a - b) else { continue };
            for (mi, &delta) in m.iter().enumerate() {
                if diff <= delta {
                    set.insert((i - 1) * m.len() + mi);
                }
            }
        }
        sets.push((set, SetLabel::Vertex(v)));
    }
    if !excluded.is_empty() {
        log::info!("lp system: excluded {} vertices with unreachable terminals", excluded.len());
    }
    Ok(LpFamily { family: SetFamily::new(ground, sets), excluded })
}

/// Shorthand for [`lp_system`] with [`LpKind::Hat`].
pub fn lp_hat_system(g: &Graph, terminals: &[usize], deltas: &[i64]) -> Result<LpFamily> {
    lp_system(g, terminals, deltas, LpKind::Hat)
}

/// Every realized difference `d(v,s_i) − d(v,s_0)`, sorted. Useful as `M`.
pub fn realized_differences(g: &Graph, terminals: &[usize]) -> Vec<i64> {
    let rows: Vec<_> = terminals.iter().map(|&s| g.sssp(s, true)).collect();
    let mut out = BTreeSet::new();
    for v in 0..g.n() {
        let Some(base) = rows[0].get(v).finite() else { continue };
        for row in &rows[1..] {
            if let Some(d) = row.get(v).finite() {
                out.insert(i64::from(d) - i64::from(base));
            }
        }
    }
    out.into_iter().collect()
}

/// One edge set per root: the deterministic shortest-path tree.
pub fn sp_tree_system(g: &Graph) -> Result<SetFamily> {
    check_cap(g, EXHAUSTIVE_CAP)?;
    let m = g.m();
    let ground = (0..m).map(GroundElement::Edge).collect();
    let sets = (0..g.n())
        .map(|root| (BitSet::from_indices(m, g.shortest_path_tree(root)), SetLabel::Tree { root }));
    Ok(SetFamily::new(ground, sets))
}

/// Outcome of a VC-dimension search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcReport {
    /// Size of the largest shattered set found.
    pub dimension: usize,
    /// True when the search stopped at the cap, so the dimension may be larger.
    pub capped: bool,
    /// A shattered set of size `dimension`, ascending.
    pub witness: Vec<usize>,
    /// Number of shattered sets found per size.
    pub shattered_per_size: Vec<usize>,
}

impl VcReport {
    /// Whether the search proved the dimension is at most `bound`.
    pub fn at_most(&self, bound: usize) -> bool {
        !self.capped && self.dimension <= bound
    }
}

/// Level-wise search: a `(d+1)`-set is tested only if all its `d`-subsets are
/// shattered. Stops after finding a shattered set of size `cap`.
pub fn vc_dimension(f: &SetFamily, cap: usize) -> VcReport {
    assert!(cap <= MAX_VC_CAP, "VC search cap is at most {MAX_VC_CAP}");
    if f.is_empty() {
        return VcReport { dimension: 0, capped: false, witness: Vec::new(), shattered_per_size: vec![0] };
    }
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut per_size = vec![1];
    let mut witness = Vec::new();
    let mut d = 0;
    while d < cap {
        let next = extend_level(f, &level, d);
        if next.is_empty() {
            break;
        }
        d += 1;
        per_size.push(next.len());
        witness = next[0].clone();
        level = next;
    }
    VcReport { dimension: d, capped: d == cap, witness, shattered_per_size: per_size }
}

fn extend_level(f: &SetFamily, level: &[Vec<usize>], d: usize) -> Vec<Vec<usize>> {
    let n = f.ground_size();
    let known: HashSet<&[usize]> = level.iter().map(Vec::as_slice).collect();
    let mut next = Vec::new();
    let mut probe = Vec::with_capacity(d + 1);
    for s in level {
        let start = s.last().map_or(0, |&x| x + 1);
        'cand: for x in start..n {
            let mut cand = s.clone();
            cand.push(x);
            // All d-subsets containing x must already be shattered.
            for skip in 0..d {
                probe.clear();
                probe.extend(cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &y)| y));
                if !known.contains(probe.as_slice()) {
                    continue 'cand;
                }
            }
            if f.shatters(&cand) {
                next.push(cand);
            }
        }
    }
    next
}

/// `{Y ∩ X : Y ∈ f}` re-indexed over `x` (in the given order).
pub fn restrict(f: &SetFamily, x: &[usize]) -> SetFamily {
    let ground: Vec<GroundElement> = x.iter().map(|&i| f.ground[i]).collect();
    let sets = f.sets.iter().zip(&f.labels).map(|(s, &l)| {
        let mut r = BitSet::new(x.len());
        for (k, &i) in x.iter().enumerate() {
            if s.contains(i) {
                r.insert(k);
            }
        }
        (r, l)
    });
    SetFamily::new(ground, sets)
}

/// `Σ_{i≤k} C(n, i)`, saturating.
pub fn sauer_shelah_bound(n: u64, k: u32) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 0..=u64::from(k) {
        if i > n {
            break;
        }
        total = total.saturating_add(c);
        c = c.saturating_mul(u128::from(n - i)) / u128::from(i + 1);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SauerShelahReport {
    pub family_size: usize,
    pub ground_size: usize,
    pub k: u32,
    pub bound: u128,
    pub ratio: f64,
    pub violated: bool,
}

pub fn sauer_shelah_check(f: &SetFamily, k: u32) -> SauerShelahReport {
    let bound = sauer_shelah_bound(f.ground_size() as u64, k);
    SauerShelahReport {
        family_size: f.len(),
        ground_size: f.ground_size(),
        k,
        bound,
        ratio: f.len() as f64 / bound as f64,
        violated: f.len() as u128 > bound,
    }
}

/// Groups a family's sets by trace on `ys`; handy for reporting which member
/// realizes each subset.
pub fn realizers(f: &SetFamily, ys: &[usize]) -> HashMap<u64, usize> {
    let mut out = HashMap::new();
    for (i, s) in f.sets.iter().enumerate() {
        out.entry(s.trace(ys)).or_insert(i);
    }
    out
}
