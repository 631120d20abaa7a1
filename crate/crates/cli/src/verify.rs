//! Brute-force cross-checks shared by the CLI and the test suites.

use minorvc_core::directed::{ClusterPatterns, DirectedOracle, DirectedRows};
use minorvc_core::pattern::{pattern_distance, Pattern};
use minorvc_core::undirected::UndirectedOracle;
use minorvc_core::{Dist, DistMatrix, Graph, RDivision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: u64,
    pub mismatches: u64,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }

    fn record(&mut self, good: bool) {
        self.checked += 1;
        self.mismatches += u64::from(!good);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
    }
}

pub fn undirected_oracle_vs(o: &UndirectedOracle, d: &DistMatrix) -> CheckReport {
    let mut rep = CheckReport::default();
    for u in 0..d.n() {
        for v in 0..d.n() {
            rep.record(Dist::Finite(o.query(u, v)) == d.get(u, v));
        }
    }
    rep
}

pub fn directed_oracle_vs(o: &DirectedOracle, d: &DistMatrix) -> CheckReport {
    let mut rep = CheckReport::default();
    for u in 0..d.n() {
        for v in 0..d.n() {
            rep.record(o.query(u, v) == d.get(u, v));
        }
    }
    rep
}

/// Picks a uniformly random `(u, R)` with `u ∉ R`, if any exists.
fn sample_outside(div: &RDivision, n: usize, rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
    if div.clusters.len() < 2 {
        return None;
    }
    loop {
        let u = rng.gen_range(0..n);
        let c = rng.gen_range(0..div.clusters.len());
        if div.owner(u) != c {
            return Some((u, c));
        }
    }
}

/// Samples `(u, R, v)` with `u ∉ R ∋ v` and checks
/// `d(u,v) = d(u,s_0) + min_i (p_u[i] + d(s_i,v))`.
pub fn pattern_reconstruction(div: &RDivision, d: &DistMatrix, samples: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::default();
    for _ in 0..samples {
        let Some((u, c)) = sample_outside(div, d.n(), &mut rng) else { break };
        let cl = &div.clusters[c];
        let v = cl.vertices[rng.gen_range(0..cl.len())];
        let seq = &cl.boundary_sequence;
        let to_s: Vec<Dist> = seq.iter().map(|&s| d.get(u, s)).collect();
        let to_v: Vec<Dist> = seq.iter().map(|&s| d.get(s, v)).collect();
        let got = Pattern::from_distances(&to_s).ok().and_then(|p| {
            let d0 = i64::from(to_s[0].finite()?);
            Some(d0 + pattern_distance(&p, &to_v)?)
        });
        rep.record(got.map(|x| Dist::Finite(x as u32)) == Some(d.get(u, v)));
    }
    rep
}

/// Samples `(u, R)` with `u ∉ R` and checks the maximal-base `Δ(u→R)`
/// against `max_{v∈R} d(u→v)` over reachable `v`. Also returns the number
/// of maximum-base hypothesis violations seen.
pub fn max_base_delta(g: &Graph, div: &RDivision, d: &DistMatrix, samples: usize, seed: u64) -> (CheckReport, usize) {
    let rows = DirectedRows::build(g, div);
    let mut per_cluster: Vec<Option<ClusterPatterns>> = (0..div.clusters.len()).map(|_| None).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::default();
    for _ in 0..samples {
        let Some((u, c)) = sample_outside(div, g.n(), &mut rng) else { break };
        let cp = per_cluster[c].get_or_insert_with(|| ClusterPatterns::new(g, div, &rows, c));
        let brute = div.clusters[c].vertices.iter().filter_map(|&v| d.get(u, v).finite()).max();
        rep.record(cp.delta(u) == brute);
    }
    let violations = per_cluster.iter().flatten().map(|cp| cp.hypothesis_violations).sum();
    (rep, violations)
}

/// Order-preserving parallel map over `items` with up to `threads` workers.
pub fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use minorvc_core::division::build_r_division;
    use minorvc_core::generate;

    #[test]
    fn samples_agree_on_small_graphs() {
        let g = generate::random_planar(80, 2).unwrap();
        let div = build_r_division(&g, 10).unwrap();
        let rep = pattern_reconstruction(&div, &g.all_pairs().unwrap(), 500, 1);
        assert_eq!((rep.checked, rep.mismatches), (500, 0));

        let dg = generate::orient(&g, 2).unwrap();
        let (rep, viol) = max_base_delta(&dg, &div, &dg.all_pairs().unwrap(), 500, 1);
        assert_eq!((rep.checked, rep.mismatches, viol), (500, 0, 0));
    }

    #[test]
    fn par_map_keeps_order() {
        let v: Vec<u32> = (0..103).collect();
        assert_eq!(par_map(&v, 4, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert!(par_map(&[] as &[u32], 4, |x| *x).is_empty());
    }
}
