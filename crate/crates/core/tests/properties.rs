//! Invariants of the graph measures, checked on random graphs against the
//! brute-force oracles.

mod common;

use common::{erdos_renyi, named_fixtures, permuted, random_tree};
use netpos_core::centrality::{betweenness, closeness_estimated, closeness_exact};
use netpos_core::coreness::{coreness, coreness_with_tie_order};
use netpos_core::graph::build_graph;
use netpos_core::graphlets::{
    count_orbits, local_centrality, local_spanning, LocalWeights, OrbitVector,
};
use netpos_core::oracle::{
    brute_force_betweenness, brute_force_orbits, orbit_identity_violations, verify_coreness,
};
use netpos_core::Graph;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.0..0.7f64, any::<u64>()).prop_map(|(n, p, seed)| erdos_renyi(n, p, seed))
}

fn arb_perm(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn orbits_match_brute_force(g in arb_graph(16)) {
        let fast = count_orbits(&g);
        prop_assert_eq!(&fast, &brute_force_orbits(&g));
        prop_assert!(orbit_identity_violations(&g, &fast).is_empty());
    }

    #[test]
    fn degree_sum_is_twice_edges(g in arb_graph(30)) {
        let total: usize = g.nodes().map(|v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        for v in g.nodes() {
            let nb = g.neighbors(v);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(nb.iter().all(|&u| u.index() < g.node_count() && u != v));
            prop_assert!(nb.iter().all(|&u| g.has_edge(u, v)));
        }
    }

    #[test]
    fn build_graph_ignores_edge_order(g in arb_graph(20), seed in any::<u64>()) {
        let mut pairs: Vec<(String, String)> = g
            .edges()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect();
        prop_assume!(!pairs.is_empty());
        let first = build_graph(pairs.clone()).unwrap().0;
        let perm = arb_perm(pairs.len(), seed);
        pairs = perm.iter().map(|&i| pairs[i].clone()).collect();
        // Flip some pair orientations as well.
        for (k, p) in pairs.iter_mut().enumerate() {
            if k % 2 == 1 {
                std::mem::swap(&mut p.0, &mut p.1);
            }
        }
        let second = build_graph(pairs).unwrap().0;
        prop_assert_eq!(first, second);
    }

    #[test]
    fn betweenness_matches_path_enumeration(g in arb_graph(14)) {
        let fast = betweenness(&g);
        let slow = brute_force_betweenness(&g);
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
        }
        for v in g.nodes() {
            prop_assert!(fast[v.index()] >= 0.0);
            if g.degree(v).unwrap() <= 1 {
                prop_assert_eq!(fast[v.index()], 0.0);
            }
        }
    }

    #[test]
    fn tree_betweenness_sums_path_interiors(n in 2usize..60, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let mut bfs = netpos_core::centrality::Bfs::new(n);
        let mut interior = 0u64;
        for s in t.nodes() {
            bfs.run(&t, s);
            for u in s.index() + 1..n {
                interior += u64::from(bfs.distance(u).unwrap() - 1);
            }
        }
        let total: f64 = betweenness(&t).iter().sum();
        prop_assert!((total - interior as f64).abs() < 1e-9);
    }

    #[test]
    fn coreness_is_verified_and_tie_free(g in arb_graph(30), seed in any::<u64>()) {
        let core = coreness(&g);
        prop_assert_eq!(verify_coreness(&g, &core), Ok(()));
        let asc: Vec<usize> = (0..g.node_count()).collect();
        let shuffled = arb_perm(g.node_count(), seed);
        prop_assert_eq!(&coreness_with_tie_order(&g, &asc), &core);
        prop_assert_eq!(&coreness_with_tie_order(&g, &shuffled), &core);
        for v in g.nodes() {
            prop_assert!(core[v.index()] as usize <= g.degree(v).unwrap());
        }
    }

    #[test]
    fn measures_survive_relabeling(g in arb_graph(18), seed in any::<u64>()) {
        let perm = arb_perm(g.node_count(), seed);
        let h = permuted(&g, &perm);
        let (cg, ch) = (closeness_exact(&g), closeness_exact(&h));
        let (bg, bh) = (betweenness(&g), betweenness(&h));
        let (kg, kh) = (coreness(&g), coreness(&h));
        let (og, oh) = (count_orbits(&g), count_orbits(&h));
        for v in 0..g.node_count() {
            let w = perm[v];
            prop_assert!((cg[v] - ch[w]).abs() < 1e-12);
            prop_assert!((bg[v] - bh[w]).abs() < 1e-9);
            prop_assert_eq!(kg[v], kh[w]);
            prop_assert_eq!(og[v], oh[w]);
        }
    }

    #[test]
    fn full_pivot_sample_is_exact(g in arb_graph(30), seed in any::<u64>()) {
        let exact = closeness_exact(&g);
        let est = closeness_estimated(&g, g.node_count(), seed).unwrap();
        for (a, b) in exact.iter().zip(&est) {
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(a));
        }
    }

    #[test]
    fn local_features_are_monotone(
        counts in proptest::array::uniform15(0u64..1_000_000),
        orbit in 0usize..15,
        bump in 1u64..1000,
        cut in any::<bool>(),
    ) {
        let w = LocalWeights { include_cut_orbits: cut };
        let base = OrbitVector(counts);
        let mut more = base;
        more.0[orbit] += bump;
        prop_assert!(local_centrality(&more, w) >= local_centrality(&base, w));
        prop_assert!(local_spanning(&more) >= local_spanning(&base));
        let ls = local_spanning(&base);
        prop_assert!(ls >= 0.0);
        if ls == 0.0 {
            for o in [2, 5, 7, 11] {
                prop_assert_eq!(base[o], 0);
            }
        }
    }
}

#[test]
fn fixtures_agree_with_oracles() {
    for (name, g) in named_fixtures() {
        assert_eq!(count_orbits(&g), brute_force_orbits(&g), "{name}");
        let b = betweenness(&g);
        let o = brute_force_betweenness(&g);
        assert!(
            b.iter().zip(&o).all(|(x, y)| (x - y).abs() <= 1e-9),
            "{name}"
        );
        assert_eq!(verify_coreness(&g, &coreness(&g)), Ok(()), "{name}");
    }
}

#[test]
fn diamond_orbits() {
    let g = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
    let o = count_orbits(&g);
    // Degree-three nodes 0, 1; degree-two nodes 2, 3.
    assert_eq!(o[0].0, [3, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]);
    assert_eq!(o[2].0, [2, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0]);
}

#[test]
fn dense_graphs_agree_with_oracle() {
    for seed in 0..10 {
        let g = erdos_renyi(22, 0.6, seed);
        assert_eq!(count_orbits(&g), brute_force_orbits(&g));
    }
}
