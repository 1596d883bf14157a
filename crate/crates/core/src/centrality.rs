//! Global position: closeness (exact, harmonic, pivot-estimated) and
//! shortest-path betweenness.
//!
//! Closeness is component-restricted: for a node `v` in component `C`,
//! `closeness(v) = (|C| - 1) / sum_{u in C} d(v, u)`, and isolated nodes score 0.
//! Betweenness is unnormalized and counts unordered pairs with endpoints
//! excluded, so a star center on `k` leaves scores `k(k-1)/2`.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coreness::coreness;
use crate::graph::{Graph, NodeId};

const UNSEEN: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CentralityError {
    #[error("number of pivots must be at least 1")]
    ZeroPivots,
}

/// How closeness is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum ClosenessMode {
    #[default]
    Exact,
    Harmonic,
    Estimated {
        pivots: usize,
        seed: u64,
    },
}

/// Closeness, betweenness and coreness for every node, indexed by id.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GlobalFeatures {
    pub closeness: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub coreness: Vec<u32>,
}

impl GlobalFeatures {
    pub fn compute(g: &Graph, mode: ClosenessMode) -> Result<Self, CentralityError> {
        let closeness = match mode {
            ClosenessMode::Exact => closeness_exact(g),
            ClosenessMode::Harmonic => closeness_harmonic(g),
            ClosenessMode::Estimated { pivots, seed } => closeness_estimated(g, pivots, seed)?,
        };
        Ok(GlobalFeatures {
            closeness,
            betweenness: betweenness(g),
            coreness: coreness(g),
        })
    }
}

/// Reusable breadth-first search buffers.
#[derive(Debug, Clone)]
pub struct Bfs {
    dist: Vec<u32>,
    order: Vec<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            dist: vec![UNSEEN; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Runs from `source`; afterwards [`Bfs::reached`] lists visited nodes in
    /// visiting order and [`Bfs::distance`] is valid for them.
    pub fn run(&mut self, g: &Graph, source: NodeId) {
        for &u in &self.order {
            self.dist[u] = UNSEEN;
        }
        self.order.clear();
        let s = source.index();
        self.dist[s] = 0;
        self.order.push(s);
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            let du = self.dist[u] + 1;
            for &w in g.adj(u) {
                let w = w.index();
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du;
                    self.order.push(w);
                }
            }
        }
    }

    pub fn reached(&self) -> &[usize] {
        &self.order
    }

    /// Hop distance from the last source, `None` if unreachable.
    pub fn distance(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNSEEN => None,
            d => Some(d),
        }
    }

    fn distance_sum(&self) -> u64 {
        self.order.iter().map(|&u| u64::from(self.dist[u])).sum()
    }
}

/// Exact closeness of one node.
pub fn closeness_of(g: &Graph, v: NodeId, bfs: &mut Bfs) -> f64 {
    bfs.run(g, v);
    let reached = bfs.reached().len();
    if reached <= 1 {
        return 0.0;
    }
    (reached - 1) as f64 / bfs.distance_sum() as f64
}

/// Harmonic closeness of one node: mean of `1/d` over all other nodes.
pub fn harmonic_of(g: &Graph, v: NodeId, bfs: &mut Bfs) -> f64 {
    let n = g.node_count();
    if n <= 1 {
        return 0.0;
    }
    bfs.run(g, v);
    let sum: f64 = bfs.reached()[1..]
        .iter()
        .map(|&u| 1.0 / f64::from(bfs.dist[u]))
        .sum();
    sum / (n - 1) as f64
}

/// Exact component-restricted closeness via one BFS per node.
pub fn closeness_exact(g: &Graph) -> Vec<f64> {
    let mut bfs = Bfs::new(g.node_count());
    g.nodes().map(|v| closeness_of(g, v, &mut bfs)).collect()
}

/// Harmonic closeness, normalized by `n - 1` into `[0, 1]`.
pub fn closeness_harmonic(g: &Graph) -> Vec<f64> {
    let mut bfs = Bfs::new(g.node_count());
    g.nodes().map(|v| harmonic_of(g, v, &mut bfs)).collect()
}

/// Pivot-sampled closeness.
///
/// `num_pivots` distinct pivots are drawn uniformly without replacement from a
/// ChaCha8 stream seeded with `seed`. The total distance from `v` to its
/// component `C` is estimated as `|C| / k * sum_p d(v, p)` over the `k` pivots
/// inside `C`. With every node a pivot the estimate is exact, bit for bit.
/// Components that received no pivot fall back to exact BFS.
pub fn closeness_estimated(
    g: &Graph,
    num_pivots: usize,
    seed: u64,
) -> Result<Vec<f64>, CentralityError> {
    if num_pivots == 0 {
        return Err(CentralityError::ZeroPivots);
    }
    let n = g.node_count();
    if num_pivots >= n {
        return Ok(closeness_exact(g));
    }
    let comp = g.connected_components();
    let comps = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut comp_size = vec![0usize; comps];
    for &c in &comp {
        comp_size[c] += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pivots = rand::seq::index::sample(&mut rng, n, num_pivots).into_vec();
    pivots.sort_unstable();

    let mut pivots_in = vec![0usize; comps];
    let mut dist_sum = vec![0u64; n];
    let mut bfs = Bfs::new(n);
    for &p in &pivots {
        pivots_in[comp[p]] += 1;
        bfs.run(g, NodeId::new(p));
        for &u in bfs.reached() {
            dist_sum[u] += u64::from(bfs.dist[u]);
        }
    }

    Ok((0..n)
        .map(|v| {
            let size = comp_size[comp[v]];
            let k = pivots_in[comp[v]];
            if size <= 1 {
                0.0
            } else if k == 0 {
                closeness_of(g, NodeId::new(v), &mut bfs)
            } else {
                let total = dist_sum[v] as f64 * (size as f64 / k as f64);
                (size - 1) as f64 / total
            }
        })
        .collect())
}

/// Buffers for single-source shortest-path counting and dependency
/// accumulation.
#[derive(Debug, Clone)]
pub struct Brandes {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    stack: Vec<usize>,
}

impl Brandes {
    pub fn new(n: usize) -> Self {
        Brandes {
            dist: vec![UNSEEN; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            stack: Vec::with_capacity(n),
        }
    }

    /// Dependencies of `source` on every node: `delta[v]` is the sum over
    /// targets `t` of the fraction of shortest `source`-`t` paths through `v`.
    /// Entries outside the source's component and the source itself are 0.
    pub fn dependencies(&mut self, g: &Graph, source: NodeId) -> &[f64] {
        for &u in &self.stack {
            self.dist[u] = UNSEEN;
            self.sigma[u] = 0.0;
            self.delta[u] = 0.0;
        }
        self.stack.clear();

        let s = source.index();
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        // `stack` doubles as the FIFO queue: BFS order is the stack order.
        self.stack.push(s);
        let mut head = 0;
        while head < self.stack.len() {
            let u = self.stack[head];
            head += 1;
            let next = self.dist[u] + 1;
            let sigma_u = self.sigma[u];
            for &w in g.adj(u) {
                let w = w.index();
                if self.dist[w] == UNSEEN {
                    self.dist[w] = next;
                    self.stack.push(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += sigma_u;
                }
            }
        }

        // Predecessors are recovered from distances instead of stored lists.
        for &w in self.stack.iter().rev() {
            let dw = self.dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &u in g.adj(w) {
                let u = u.index();
                if self.dist[u] == dw - 1 {
                    self.delta[u] += self.sigma[u] * coeff;
                }
            }
        }
        self.delta[s] = 0.0;
        &self.delta
    }

    /// Nodes touched by the last [`Brandes::dependencies`] call.
    pub fn touched(&self) -> &[usize] {
        &self.stack
    }
}

/// Unnormalized betweenness over unordered pairs, sources processed in
/// ascending id order.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut total = vec![0.0; n];
    let mut brandes = Brandes::new(n);
    for s in g.nodes() {
        let delta = brandes.dependencies(g, s);
        for (t, d) in total.iter_mut().zip(delta) {
            *t += d;
        }
    }
    for t in &mut total {
        *t /= 2.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_index_edges(n, &e)
    }

    fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_index_edges(leaves + 1, &e)
    }

    #[test]
    fn closeness_examples() {
        let c = closeness_exact(&path(3));
        assert_eq!(c, vec![2.0 / 3.0, 1.0, 2.0 / 3.0]);
        let c = closeness_exact(&star(4));
        assert_eq!(c[0], 1.0);
        assert_eq!(c[1], 4.0 / 7.0);
        let g = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(closeness_exact(&g), vec![1.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn harmonic_examples() {
        let c = closeness_harmonic(&path(3));
        assert_eq!(c, vec![0.75, 1.0, 0.75]);
        let g = Graph::from_index_edges(1, &[]);
        assert_eq!(closeness_harmonic(&g), vec![0.0]);
    }

    #[test]
    fn estimated_full_sample_is_exact() {
        let g = path(3);
        assert_eq!(closeness_estimated(&g, 3, 7).unwrap(), closeness_exact(&g));
        assert_eq!(
            closeness_estimated(&g, 0, 7),
            Err(CentralityError::ZeroPivots)
        );
    }

    #[test]
    fn estimated_is_seeded() {
        let g = path(40);
        let a = closeness_estimated(&g, 5, 11).unwrap();
        let b = closeness_estimated(&g, 5, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn estimated_covers_pivotless_components() {
        // Two components; one pivot can reach only one of them.
        let g = Graph::from_index_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        let exact = closeness_exact(&g);
        for seed in 0..8 {
            let est = closeness_estimated(&g, 1, seed).unwrap();
            let comp = g.connected_components();
            // The component without a pivot is computed exactly.
            let hit: Vec<usize> = (0..6).filter(|&v| est[v] != exact[v]).collect();
            assert!(hit.iter().all(|&v| comp[v] == comp[hit[0]]));
        }
    }

    #[test]
    fn betweenness_examples() {
        assert_eq!(betweenness(&path(3)), vec![0.0, 1.0, 0.0]);
        assert_eq!(betweenness(&star(4)), vec![6.0, 0.0, 0.0, 0.0, 0.0]);
        let c5 = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(betweenness(&c5), vec![1.0; 5]);
    }

    #[test]
    fn global_features_bundle() {
        let g = star(3);
        let f = GlobalFeatures::compute(&g, ClosenessMode::Exact).unwrap();
        assert_eq!(f.coreness, vec![1, 1, 1, 1]);
        assert_eq!(f.betweenness[0], 3.0);
        let h = GlobalFeatures::compute(&g, ClosenessMode::Harmonic).unwrap();
        assert_eq!(h.closeness[0], 1.0);
    }
}
