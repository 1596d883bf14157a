//! Per-node orbit counts for the nine connected graphlets on 2 to 4 nodes.
//!
//! | graphlet | shape                | orbits                               |
//! |----------|----------------------|--------------------------------------|
//! | G0       | edge                 | 0                                    |
//! | G1       | path on 3 nodes      | 1 end, 2 middle                      |
//! | G2       | triangle             | 3                                    |
//! | G3       | path on 4 nodes      | 4 end, 5 middle                      |
//! | G4       | star K1,3            | 6 leaf, 7 center                     |
//! | G5       | 4-cycle              | 8                                    |
//! | G6       | paw                  | 9 pendant, 10 triangle, 11 cut node  |
//! | G7       | diamond              | 12 degree two, 13 degree three       |
//! | G8       | K4                   | 14                                   |
//!
//! Counts are of *induced* subgraphs: every vertex subset containing the node
//! is counted at most once, under the graphlet its induced edges form.
//!
//! [`count_orbits`] avoids enumerating 4-node subsets. It counts, for every
//! node, non-induced copies of each 4-node pattern from degree, triangle and
//! common-neighbor statistics, enumerates only triangles and K4s explicitly,
//! and then peels the induced counts off in order of decreasing density: each
//! induced graphlet contributes a fixed number of non-induced copies of every
//! sparser pattern.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::graph::Graph;

pub const ORBIT_COUNT: usize = 15;

/// Number of induced graphlet occurrences touching a node, per orbit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrbitVector(pub [u64; ORBIT_COUNT]);

impl OrbitVector {
    pub fn counts(&self) -> &[u64; ORBIT_COUNT] {
        &self.0
    }
}

impl Index<usize> for OrbitVector {
    type Output = u64;

    fn index(&self, orbit: usize) -> &u64 {
        &self.0[orbit]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Graphlet {
    G0,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
}

impl Graphlet {
    pub const ALL: [Graphlet; 9] = [
        Graphlet::G0,
        Graphlet::G1,
        Graphlet::G2,
        Graphlet::G3,
        Graphlet::G4,
        Graphlet::G5,
        Graphlet::G6,
        Graphlet::G7,
        Graphlet::G8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Graphlet::G0 => "G0",
            Graphlet::G1 => "G1",
            Graphlet::G2 => "G2",
            Graphlet::G3 => "G3",
            Graphlet::G4 => "G4",
            Graphlet::G5 => "G5",
            Graphlet::G6 => "G6",
            Graphlet::G7 => "G7",
            Graphlet::G8 => "G8",
        }
    }

    pub fn shape(self) -> &'static str {
        match self {
            Graphlet::G0 => "edge",
            Graphlet::G1 => "path-3",
            Graphlet::G2 => "triangle",
            Graphlet::G3 => "path-4",
            Graphlet::G4 => "star",
            Graphlet::G5 => "cycle-4",
            Graphlet::G6 => "paw",
            Graphlet::G7 => "diamond",
            Graphlet::G8 => "clique-4",
        }
    }

    /// A labelled copy: `(node count, edges, orbit of each node)`.
    pub fn template(self) -> (usize, &'static [(usize, usize)], &'static [usize]) {
        match self {
            Graphlet::G0 => (2, &[(0, 1)], &[0, 0]),
            Graphlet::G1 => (3, &[(0, 1), (1, 2)], &[1, 2, 1]),
            Graphlet::G2 => (3, &[(0, 1), (1, 2), (0, 2)], &[3, 3, 3]),
            Graphlet::G3 => (4, &[(0, 1), (1, 2), (2, 3)], &[4, 5, 5, 4]),
            Graphlet::G4 => (4, &[(0, 1), (0, 2), (0, 3)], &[7, 6, 6, 6]),
            Graphlet::G5 => (4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[8, 8, 8, 8]),
            Graphlet::G6 => (4, &[(0, 1), (0, 2), (1, 2), (0, 3)], &[11, 10, 10, 9]),
            Graphlet::G7 => (
                4,
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
                &[13, 13, 12, 12],
            ),
            Graphlet::G8 => (
                4,
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                &[14, 14, 14, 14],
            ),
        }
    }
}

/// Classification of one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrbitClass {
    pub orbit: usize,
    pub graphlet: Graphlet,
    /// Edges of the graphlet incident to a node on this orbit.
    pub edges_touched: u32,
    /// Extra components the graphlet falls into when a node on this orbit is
    /// deleted (0 when the rest stays connected).
    pub components_on_deletion: u32,
}

/// Derives the orbit classification from the graphlet templates.
pub fn taxonomy() -> [OrbitClass; ORBIT_COUNT] {
    let mut table = [OrbitClass {
        orbit: 0,
        graphlet: Graphlet::G0,
        edges_touched: 0,
        components_on_deletion: 0,
    }; ORBIT_COUNT];
    for graphlet in Graphlet::ALL {
        let (k, edges, orbits) = graphlet.template();
        for (node, &orbit) in orbits.iter().enumerate() {
            let touched = edges
                .iter()
                .filter(|&&(a, b)| a == node || b == node)
                .count();
            table[orbit] = OrbitClass {
                orbit,
                graphlet,
                edges_touched: touched as u32,
                components_on_deletion: components_without(k, edges, node) as u32 - 1,
            };
        }
    }
    table
}

fn components_without(k: usize, edges: &[(usize, usize)], removed: usize) -> usize {
    // Union-find on at most four nodes.
    let mut parent = [0usize, 1, 2, 3];
    fn find(p: &mut [usize; 4], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        if a == removed || b == removed {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..k)
        .filter(|&v| v != removed && find(&mut parent, v) == v)
        .count()
}

/// Orbits that touch two edges but are left out of the default local-centrality
/// weighting: the two cut positions of the paths.
pub const OMITTED_CENTRALITY_ORBITS: [usize; 2] = [2, 5];

/// Weighting options for the composite local features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalWeights {
    /// Give orbits 2 and 5 their edges-touched weight (2) in local centrality.
    pub include_cut_orbits: bool,
}

impl LocalWeights {
    pub fn centrality_weights(&self) -> [u32; ORBIT_COUNT] {
        let mut w = taxonomy().map(|c| c.edges_touched);
        if !self.include_cut_orbits {
            for o in OMITTED_CENTRALITY_ORBITS {
                w[o] = 0;
            }
        }
        w
    }

    pub fn spanning_weights() -> [u32; ORBIT_COUNT] {
        taxonomy().map(|c| c.components_on_deletion)
    }
}

/// Composite local position of one node.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalFeatures {
    pub local_centrality: f64,
    pub local_spanning: f64,
}

impl LocalFeatures {
    pub fn from_orbits(ov: &OrbitVector, weights: LocalWeights) -> Self {
        LocalFeatures {
            local_centrality: local_centrality(ov, weights),
            local_spanning: local_spanning(ov),
        }
    }
}

fn weighted(ov: &OrbitVector, w: &[u32; ORBIT_COUNT]) -> f64 {
    let total: u128 =
        ov.0.iter()
            .zip(w)
            .map(|(&c, &w)| u128::from(c) * u128::from(w))
            .sum();
    total as f64
}

/// Orbit counts weighted by the number of graphlet edges each orbit touches.
pub fn local_centrality(ov: &OrbitVector, weights: LocalWeights) -> f64 {
    weighted(ov, &weights.centrality_weights())
}

/// Orbit counts weighted by the components created when the node is deleted.
pub fn local_spanning(ov: &OrbitVector) -> f64 {
    weighted(ov, &LocalWeights::spanning_weights())
}

/// Oriented adjacency entry: target plus the flat adjacency slots of both
/// directions of the edge.
#[derive(Clone, Copy)]
struct Arc {
    to: u32,
    fwd: u32,
    rev: u32,
}

struct Oriented {
    offsets: Vec<usize>,
    arcs: Vec<Arc>,
}

impl Oriented {
    /// Orients every edge from lower to higher `(degree, id)` rank.
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let above = |u: usize, v: usize| (g.deg(u), u) < (g.deg(v), v);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut arcs = Vec::with_capacity(g.edge_count());
        offsets.push(0);
        for u in 0..n {
            for (k, &v) in g.adj(u).iter().enumerate() {
                let v = v.index();
                if above(u, v) {
                    let rev = g
                        .slot(v, crate::graph::NodeId::new(u))
                        .expect("symmetric adjacency");
                    arcs.push(Arc {
                        to: v as u32,
                        fwd: (g.offset(u) + k) as u32,
                        rev: rev as u32,
                    });
                }
            }
            offsets.push(arcs.len());
        }
        Oriented { offsets, arcs }
    }

    #[inline]
    fn out(&self, u: usize) -> &[Arc] {
        &self.arcs[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Calls `f(u, w, x, uw, ux, wx)` once per triangle, where the last three
    /// arguments are oriented arcs for its edges.
    fn for_each_triangle(&self, n: usize, mut f: impl FnMut(usize, usize, usize, Arc, Arc, Arc)) {
        const NONE: u32 = u32::MAX;
        let mut mark = vec![NONE; n];
        for u in 0..n {
            let out_u = self.out(u);
            for (i, a) in out_u.iter().enumerate() {
                mark[a.to as usize] = i as u32;
            }
            for &uw in out_u {
                let w = uw.to as usize;
                for &wx in self.out(w) {
                    let x = wx.to as usize;
                    let j = mark[x];
                    if j != NONE {
                        f(u, w, x, uw, out_u[j as usize], wx);
                    }
                }
            }
            for a in out_u {
                mark[a.to as usize] = NONE;
            }
        }
    }
}

/// Exact induced orbit counts (orbits 0 to 14) for every node.
pub fn count_orbits(g: &Graph) -> Vec<OrbitVector> {
    let n = g.node_count();
    let slots = 2 * g.edge_count();
    let oriented = Oriented::new(g);

    // Triangles per edge slot and per node.
    let mut edge_tri = vec![0u32; slots];
    let mut tri = vec![0i64; n];
    oriented.for_each_triangle(n, |u, w, x, uw, ux, wx| {
        for arc in [uw, ux, wx] {
            edge_tri[arc.fwd as usize] += 1;
            edge_tri[arc.rev as usize] += 1;
        }
        tri[u] += 1;
        tri[w] += 1;
        tri[x] += 1;
    });

    // Per node: sum over its triangles of (triangles on the opposite edge - 1),
    // i.e. non-induced diamonds with the node at a degree-two position.
    let mut diamond_x = vec![0i64; n];
    oriented.for_each_triangle(n, |u, w, x, uw, ux, wx| {
        diamond_x[u] += i64::from(edge_tri[wx.fwd as usize]) - 1;
        diamond_x[w] += i64::from(edge_tri[ux.fwd as usize]) - 1;
        diamond_x[x] += i64::from(edge_tri[uw.fwd as usize]) - 1;
    });

    let k4 = count_k4(&oriented, n);

    let deg: Vec<i64> = (0..n).map(|v| g.deg(v) as i64).collect();
    // Sum of (deg(u) - 1) over neighbors u: walks of length two leaving v.
    let reach2: Vec<i64> = (0..n)
        .map(|v| g.adj(v).iter().map(|u| deg[u.index()] - 1).sum())
        .collect();

    let mut common = vec![0u32; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut out = vec![OrbitVector::default(); n];
    for v in 0..n {
        let d = deg[v];
        let t = tri[v];
        let base = g.offset(v);

        let mut p4_end = -d * (d - 1) - 2 * t;
        let mut star_leaf = 0i64;
        let mut paw_tri = 0i64;
        let mut paw_pendant = 0i64;
        let mut diamond_y = 0i64;
        for (k, &u) in g.adj(v).iter().enumerate() {
            let u = u.index();
            let tuv = i64::from(edge_tri[base + k]);
            p4_end += reach2[u];
            star_leaf += choose2(deg[u] - 1);
            paw_tri += tuv * (deg[u] - 2);
            paw_pendant += tri[u] - tuv;
            diamond_y += choose2(tuv);
        }
        let p4_mid = (d - 1) * reach2[v] - 2 * t;
        let star_center = choose3(d);
        let paw_center = t * (d - 2).max(0);

        // 4-cycles through v, keyed by the opposite node.
        for &u in g.adj(v) {
            for &x in g.adj(u.index()) {
                let x = x.index();
                if x != v {
                    if common[x] == 0 {
                        touched.push(x);
                    }
                    common[x] += 1;
                }
            }
        }
        let mut cycle4 = 0i64;
        for &x in &touched {
            cycle4 += choose2(i64::from(common[x]));
            common[x] = 0;
        }
        touched.clear();

        let o14 = k4[v];
        let o13 = diamond_y - 3 * o14;
        let o12 = diamond_x[v] - 3 * o14;
        let o11 = paw_center - 2 * o13 - 3 * o14;
        let o10 = paw_tri - 2 * o12 - 2 * o13 - 6 * o14;
        let o9 = paw_pendant - 2 * o12 - 3 * o14;
        let o8 = cycle4 - o12 - o13 - 3 * o14;
        let o7 = star_center - o11 - o13 - o14;
        let o6 = star_leaf - o9 - o10 - 2 * o12 - o13 - 3 * o14;
        let o5 = p4_mid - 2 * o8 - o10 - 2 * o11 - 2 * o12 - 4 * o13 - 6 * o14;
        let o4 = p4_end - 2 * o8 - 2 * o9 - o10 - 4 * o12 - 2 * o13 - 6 * o14;
        let o3 = t;
        let o2 = choose2(d) - t;
        let o1 = reach2[v] - 2 * t;
        let o0 = d;

        let signed = [
            o0, o1, o2, o3, o4, o5, o6, o7, o8, o9, o10, o11, o12, o13, o14,
        ];
        debug_assert!(signed.iter().all(|&c| c >= 0), "node {v}: {signed:?}");
        out[v] = OrbitVector(signed.map(|c| c as u64));
    }
    out
}

fn count_k4(oriented: &Oriented, n: usize) -> Vec<i64> {
    let mut k4 = vec![0i64; n];
    let mut in_u = vec![false; n];
    let mut in_uw = vec![false; n];
    let mut both: Vec<usize> = Vec::new();
    for u in 0..n {
        let out_u = oriented.out(u);
        for a in out_u {
            in_u[a.to as usize] = true;
        }
        for uw in out_u {
            let w = uw.to as usize;
            both.clear();
            both.extend(
                oriented
                    .out(w)
                    .iter()
                    .map(|a| a.to as usize)
                    .filter(|&x| in_u[x]),
            );
            if both.len() < 2 {
                continue;
            }
            for &x in &both {
                in_uw[x] = true;
            }
            for &x in &both {
                for a in oriented.out(x) {
                    let y = a.to as usize;
                    if in_uw[y] {
                        k4[u] += 1;
                        k4[w] += 1;
                        k4[x] += 1;
                        k4[y] += 1;
                    }
                }
            }
            for &x in &both {
                in_uw[x] = false;
            }
        }
        for a in out_u {
            in_u[a.to as usize] = false;
        }
    }
    k4
}

#[inline]
fn choose2(x: i64) -> i64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

#[inline]
fn choose3(x: i64) -> i64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) / 2 * (x - 2) / 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(pairs: &[(usize, u64)]) -> OrbitVector {
        let mut v = OrbitVector::default();
        for &(o, c) in pairs {
            v.0[o] = c;
        }
        v
    }

    #[test]
    fn triangle() {
        let g = Graph::from_index_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        for v in count_orbits(&g) {
            assert_eq!(v, ov(&[(0, 2), (3, 1)]));
        }
    }

    #[test]
    fn star() {
        let g = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = count_orbits(&g);
        assert_eq!(c[0], ov(&[(0, 3), (2, 3), (7, 1)]));
        for leaf in &c[1..] {
            assert_eq!(*leaf, ov(&[(0, 1), (1, 2), (6, 1)]));
        }
    }

    #[test]
    fn k4() {
        let g = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for v in count_orbits(&g) {
            assert_eq!(v, ov(&[(0, 3), (3, 3), (14, 1)]));
        }
    }

    #[test]
    fn paw() {
        // Triangle a, b, c with pendant d on a.
        let g = Graph::from_index_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        let c = count_orbits(&g);
        assert_eq!(c[3], ov(&[(0, 1), (1, 2), (9, 1)]));
        assert_eq!(c[0], ov(&[(0, 3), (2, 2), (3, 1), (11, 1)]));
        assert_eq!(c[1], ov(&[(0, 2), (1, 1), (3, 1), (10, 1)]));
        assert_eq!(c[2], c[1]);
    }

    #[test]
    fn edge_and_empty() {
        let g = Graph::from_index_edges(3, &[(0, 1)]);
        let c = count_orbits(&g);
        assert_eq!(c[0], ov(&[(0, 1)]));
        assert_eq!(c[2], OrbitVector::default());
    }

    #[test]
    fn taxonomy_matches_published_classes() {
        let t = taxonomy();
        let touched = |o: usize| t[o].edges_touched;
        let comps = |o: usize| t[o].components_on_deletion;
        for o in [0, 1, 4, 6, 9] {
            assert_eq!(touched(o), 1, "orbit {o}");
        }
        for o in [2, 3, 5, 8, 10, 12] {
            assert_eq!(touched(o), 2, "orbit {o}");
        }
        for o in [7, 11, 13, 14] {
            assert_eq!(touched(o), 3, "orbit {o}");
        }
        for o in [0, 1, 3, 4, 6, 8, 9, 10, 12, 13, 14] {
            assert_eq!(comps(o), 0, "orbit {o}");
        }
        for o in [2, 5, 11] {
            assert_eq!(comps(o), 1, "orbit {o}");
        }
        assert_eq!(comps(7), 2);
        let graphlets: Vec<_> = t.iter().map(|c| c.graphlet.name()).collect();
        assert_eq!(
            graphlets,
            [
                "G0", "G1", "G1", "G2", "G3", "G3", "G4", "G4", "G5", "G6", "G6", "G6", "G7", "G7",
                "G8"
            ]
        );
    }

    #[test]
    fn local_feature_examples() {
        let zero = OrbitVector::default();
        assert_eq!(local_centrality(&zero, LocalWeights::default()), 0.0);
        let k4 = ov(&[(0, 3), (3, 3), (14, 1)]);
        assert_eq!(local_centrality(&k4, LocalWeights::default()), 12.0);
        let center = ov(&[(0, 3), (2, 3), (7, 1)]);
        assert_eq!(local_centrality(&center, LocalWeights::default()), 6.0);
        let cut = LocalWeights {
            include_cut_orbits: true,
        };
        assert_eq!(local_centrality(&center, cut), 12.0);
        assert_eq!(local_spanning(&center), 5.0);
        assert_eq!(local_spanning(&ov(&[(0, 2), (3, 1)])), 0.0);
        let paw_cut = ov(&[(0, 3), (2, 2), (3, 1), (11, 1)]);
        assert_eq!(local_spanning(&paw_cut), 3.0);
    }

    #[test]
    fn default_centrality_weights_follow_listed_classes() {
        let w = LocalWeights::default().centrality_weights();
        assert_eq!(w, [1, 1, 0, 2, 1, 0, 1, 3, 2, 1, 2, 3, 2, 3, 3]);
        assert_eq!(
            LocalWeights::spanning_weights(),
            [0, 0, 1, 0, 0, 1, 0, 2, 0, 0, 0, 1, 0, 0, 0]
        );
    }
}
