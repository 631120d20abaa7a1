use minorvc_core::division::build_r_division;
use minorvc_core::generate;
use minorvc_core::set_system::{restrict, vc_dimension, SetFamily};
use minorvc_core::{Dist, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random planar skeleton with random weights in `1..=wmax`, optionally oriented.
fn weighted_planar(n: usize, seed: u64, wmax: u32, directed: bool) -> Graph {
    let base = generate::random_planar_with(n, 0.8, seed).unwrap();
    let base = if directed { generate::orient(&base, seed ^ 0x5a).unwrap() } else { base };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = base.edges().iter().map(|e| (e.u as usize, e.v as usize, rng.gen_range(1..=wmax))).collect();
    Graph::new(n, directed, edges).unwrap()
}

fn add(a: Dist, b: Dist) -> Dist {
    a.sum(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triangle_inequality(n in 3usize..60, seed in any::<u64>(), directed in any::<bool>()) {
        let g = weighted_planar(n, seed, 9, directed);
        let d = g.all_pairs().unwrap();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let via = add(d.get(u, v), d.get(v, w));
                    if via.is_finite() {
                        prop_assert!(d.get(u, w) <= via, "{u}->{w} via {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn subdivision_preserves_distances(n in 3usize..40, seed in any::<u64>(), directed in any::<bool>()) {
        let g = weighted_planar(n, seed, 6, directed);
        let sub = generate::subdivide(&g, 100_000).unwrap();
        prop_assert!(sub.graph.is_unit_weight());
        let total: u64 = g.edges().iter().map(|e| u64::from(e.w)).sum();
        prop_assert_eq!(sub.graph.m() as u64, total);
        let d = g.all_pairs().unwrap();
        for u in 0..n {
            let row = sub.graph.sssp(u, false);
            for v in 0..n {
                prop_assert_eq!(row.get(v), d.get(u, v));
            }
        }
    }

    #[test]
    fn sp_tree_paths_have_sssp_length(n in 2usize..80, seed in any::<u64>(), directed in any::<bool>()) {
        let g = weighted_planar(n, seed, 5, directed);
        for root in [0, n / 2, n - 1] {
            let tree = g.shortest_path_tree(root);
            let dist = g.sssp(root, false);
            let reachable = (0..n).filter(|&v| dist.get(v).is_finite()).count();
            prop_assert_eq!(tree.len(), reachable - 1);
            // Walk parents back to the root and sum weights.
            let mut parent = vec![None; n];
            for &e in &tree {
                let e = g.edge(e);
                let (a, b) = if directed || dist.get(e.u as usize) < dist.get(e.v as usize) {
                    (e.u as usize, e.v as usize)
                } else {
                    (e.v as usize, e.u as usize)
                };
                prop_assert!(parent[b].is_none());
                parent[b] = Some((a, e.w));
            }
            for v in 0..n {
                let Some(want) = dist.get(v).finite() else { continue };
                let (mut x, mut len, mut steps) = (v, 0u32, 0);
                while x != root {
                    let (p, w) = parent[x].expect("reachable vertex has a tree parent");
                    len += w;
                    x = p;
                    steps += 1;
                    prop_assert!(steps <= n);
                }
                prop_assert_eq!(len, want);
            }
        }
    }

    #[test]
    fn division_invariants(n in 1usize..400, r in 1usize..60, seed in any::<u64>(), directed in any::<bool>()) {
        let mut g = generate::random_planar_with(n, 0.7, seed).unwrap();
        if directed {
            g = generate::orient(&g, seed).unwrap();
        }
        let div = build_r_division(&g, r).unwrap();
        prop_assert_eq!(div.validate(&g), Ok(()));
        let mut seen = vec![false; n];
        for c in &div.clusters {
            prop_assert!(c.len() <= r);
            for &v in &c.vertices {
                prop_assert!(!seen[v]);
                seen[v] = true;
                prop_assert_eq!(div.owner(v), c.id);
                let outside = g.undirected_neighbors(v).any(|w| div.owner(w) != c.id);
                prop_assert_eq!(c.boundary.binary_search(&v).is_ok(), outside);
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn restrict_never_increases_vc(
        sets in prop::collection::vec(prop::collection::vec(0usize..10, 0..10), 1..40),
        keep in prop::collection::vec(0usize..10, 0..10),
    ) {
        let f = SetFamily::from_index_sets(10, sets);
        let mut x = keep;
        x.sort_unstable();
        x.dedup();
        let before = vc_dimension(&f, 7);
        let after = vc_dimension(&restrict(&f, &x), 7);
        prop_assert!(after.dimension <= before.dimension);
        // Monotonicity of shattering: every subset of the witness is shattered.
        let w = &before.witness;
        for mask in 0u32..(1 << w.len()) {
            let sub: Vec<usize> = (0..w.len()).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).collect();
            prop_assert!(f.shatters(&sub));
        }
    }
}
