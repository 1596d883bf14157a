#![allow(dead_code)]

use netpos_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_index_edges(n, &edges)
}

/// Uniform random recursive tree: node i attaches to a uniform earlier node.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    Graph::from_index_edges(n, &edges)
}

/// Relabels node `i` as `perm[i]`.
pub fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g
        .edges()
        .map(|(u, v)| (perm[u.index()], perm[v.index()]))
        .collect();
    Graph::from_index_edges(g.node_count(), &edges)
}

pub fn named_fixtures() -> Vec<(&'static str, Graph)> {
    let g = Graph::from_index_edges;
    vec![
        ("triangle", g(3, &[(0, 1), (1, 2), (0, 2)])),
        ("P3", g(3, &[(0, 1), (1, 2)])),
        ("P4", g(4, &[(0, 1), (1, 2), (2, 3)])),
        ("K1,3", g(4, &[(0, 1), (0, 2), (0, 3)])),
        ("C4", g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("C5", g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
        ("paw", g(4, &[(0, 1), (0, 2), (1, 2), (0, 3)])),
        ("diamond", g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])),
        (
            "K4",
            g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ),
    ]
}
