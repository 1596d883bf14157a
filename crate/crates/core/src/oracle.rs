//! Brute-force references for verification. Cost grows as `n^4` (orbits) or
//! with the number of shortest paths (betweenness); keep inputs small.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::graphlets::{OrbitVector, ORBIT_COUNT};

/// Node count above which the oracles become impractically slow.
pub const DEFAULT_ORACLE_LIMIT: usize = 60;

struct Dense {
    n: usize,
    adj: Vec<bool>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut adj = vec![false; n * n];
        for (u, v) in g.edges() {
            adj[u.index() * n + v.index()] = true;
            adj[v.index() * n + u.index()] = true;
        }
        Dense { n, adj }
    }

    #[inline]
    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }
}

/// Orbits by enumerating every 2-, 3- and 4-node subset.
///
/// A connected induced subgraph on at most four nodes is identified by its
/// sorted degree sequence; a node's orbit follows from its degree inside it.
pub fn brute_force_orbits(g: &Graph) -> Vec<OrbitVector> {
    let n = g.node_count();
    let dense = Dense::new(g);
    let mut out = vec![[0u64; ORBIT_COUNT]; n];

    for a in 0..n {
        for b in a + 1..n {
            if dense.has(a, b) {
                out[a][0] += 1;
                out[b][0] += 1;
            }
            for c in b + 1..n {
                classify(&dense, &[a, b, c], &mut out);
                for d in c + 1..n {
                    classify(&dense, &[a, b, c, d], &mut out);
                }
            }
        }
    }
    out.into_iter().map(OrbitVector).collect()
}

fn classify(dense: &Dense, nodes: &[usize], out: &mut [[u64; ORBIT_COUNT]]) {
    let k = nodes.len();
    let mut deg = [0usize; 4];
    for i in 0..k {
        for j in i + 1..k {
            if dense.has(nodes[i], nodes[j]) {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    let mut sorted = [0usize; 4];
    sorted[..k].copy_from_slice(&deg[..k]);
    sorted[..k].sort_unstable();

    // Orbit for a node of in-graphlet degree 1, 2, 3.
    let by_degree: [Option<usize>; 4] = match (k, &sorted[..k]) {
        (3, [1, 1, 2]) => [None, Some(1), Some(2), None],
        (3, [2, 2, 2]) => [None, None, Some(3), None],
        (4, [1, 1, 2, 2]) => [None, Some(4), Some(5), None],
        (4, [1, 1, 1, 3]) => [None, Some(6), None, Some(7)],
        (4, [2, 2, 2, 2]) => [None, None, Some(8), None],
        (4, [1, 2, 2, 3]) => [None, Some(9), Some(10), Some(11)],
        (4, [2, 2, 3, 3]) => [None, None, Some(12), Some(13)],
        (4, [3, 3, 3, 3]) => [None, None, None, Some(14)],
        // Disconnected: an isolated node or two disjoint edges.
        _ => return,
    };
    for i in 0..k {
        let orbit = by_degree[deg[i]].expect("degree sequence fixes every orbit");
        out[nodes[i]][orbit] += 1;
    }
}

/// Betweenness by listing every shortest path between every unordered pair.
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let dist: Vec<Vec<u32>> = (0..n).map(|s| bfs(g, s)).collect();
    let mut total = vec![0.0; n];
    let mut through = vec![0u64; n];
    let mut path = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] == u32::MAX || dist[s][t] < 2 {
                continue;
            }
            through.iter_mut().for_each(|c| *c = 0);
            path.clear();
            path.push(s);
            let paths = walk(g, &dist, t, &mut path, &mut through);
            for v in 0..n {
                if v != s && v != t && through[v] > 0 {
                    total[v] += through[v] as f64 / paths as f64;
                }
            }
        }
    }
    total
}

fn walk(g: &Graph, dist: &[Vec<u32>], t: usize, path: &mut Vec<usize>, through: &mut [u64]) -> u64 {
    let x = *path.last().unwrap();
    if x == t {
        for &v in path.iter() {
            through[v] += 1;
        }
        return 1;
    }
    let mut count = 0;
    for &y in g.adj(x) {
        let y = y.index();
        if dist[t][y] != u32::MAX && dist[t][y] + 1 == dist[t][x] {
            path.push(y);
            count += walk(g, dist, t, path, through);
            path.pop();
        }
    }
    count
}

fn bfs(g: &Graph, s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut q = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = q.pop_front() {
        for &w in g.adj(u) {
            if dist[w.index()] == u32::MAX {
                dist[w.index()] = dist[u] + 1;
                q.push_back(w.index());
            }
        }
    }
    dist
}

/// Checks a coreness assignment against the k-cores obtained by repeatedly
/// deleting nodes of degree below `k`, for every `k` up to one past the
/// largest claimed value. Returns the first discrepancy.
pub fn verify_coreness(g: &Graph, core: &[u32]) -> Result<(), String> {
    let n = g.node_count();
    if core.len() != n {
        return Err(format!("expected {n} values, got {}", core.len()));
    }
    let max = core.iter().copied().max().unwrap_or(0);
    for k in 1..=max + 1 {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] {
                    let d = g.adj(v).iter().filter(|u| alive[u.index()]).count();
                    if d < k as usize {
                        alive[v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..n {
            let claimed = core[v] >= k;
            if claimed != alive[v] {
                return Err(format!(
                    "node {}: coreness {} but {} the {k}-core",
                    g.labels()[v],
                    core[v],
                    if alive[v] { "inside" } else { "outside" }
                ));
            }
        }
    }
    Ok(())
}

/// Per-node and whole-graph identities every correct orbit count satisfies.
/// Returns one message per violated identity.
pub fn orbit_identity_violations(g: &Graph, orbits: &[OrbitVector]) -> Vec<String> {
    let mut bad = Vec::new();
    if orbits.len() != g.node_count() {
        bad.push(format!(
            "expected {} orbit vectors, got {}",
            g.node_count(),
            orbits.len()
        ));
        return bad;
    }
    for (v, ov) in orbits.iter().enumerate() {
        let d = g.adj(v).len() as u64;
        if ov[0] != d {
            bad.push(format!(
                "node {}: o0 = {} but degree {d}",
                g.labels()[v],
                ov[0]
            ));
        }
        let pairs = d * d.saturating_sub(1) / 2;
        if ov[2] + ov[3] != pairs {
            bad.push(format!("node {}: o2 + o3 != C(deg, 2)", g.labels()[v]));
        }
    }
    let mut sum = [0u64; ORBIT_COUNT];
    for ov in orbits {
        for (s, c) in sum.iter_mut().zip(ov.0) {
            *s += c;
        }
    }
    let ratios: [(usize, u64, usize, &str); 6] = [
        (1, 2, 2, "sum o1 = 2 sum o2"),
        (4, 1, 5, "sum o4 = sum o5"),
        (6, 3, 7, "sum o6 = 3 sum o7"),
        (9, 1, 11, "sum o9 = sum o11"),
        (10, 2, 11, "sum o10 = 2 sum o11"),
        (12, 1, 13, "sum o12 = sum o13"),
    ];
    for (lhs, factor, rhs, name) in ratios {
        if sum[lhs] != factor * sum[rhs] {
            bad.push(format!("{name}: {} vs {}", sum[lhs], factor * sum[rhs]));
        }
    }
    for (o, m) in [(3, 3), (8, 4), (14, 4)] {
        if sum[o] % m != 0 {
            bad.push(format!("sum o{o} = {} not divisible by {m}", sum[o]));
        }
    }
    bad
}
