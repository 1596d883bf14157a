//! Undirected simple graph over labelled members.
//!
//! Internal ids are dense (`0..n`) and assigned by sorting labels
//! lexicographically, so two edge lists with the same label and edge sets
//! always produce the same internal representation. Adjacency is stored in
//! compressed sparse rows with each neighbor list sorted ascending.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense internal node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct NodeId(u32);

impl NodeId {
    #[inline]
    pub const fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("empty graph")]
    Empty,
    #[error("edge {line}: empty node label")]
    EmptyLabel { line: usize },
    #[error("invalid node id {0}")]
    InvalidNode(usize),
    #[error("graph exceeds {max} nodes", max = u32::MAX)]
    TooManyNodes,
}

/// What construction discarded on the way to a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("nodes", &self.node_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// Accumulates labelled nodes and edges, then freezes them into a [`Graph`].
///
/// Nodes may be added without edges; they survive as isolated members.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
    pairs_seen: usize,
    empty_label_at: Option<usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, label: &str) -> usize {
        let next = self.labels.len();
        *self.labels.entry(label.to_string()).or_insert(next)
    }

    /// Registers a node. Empty labels are ignored.
    pub fn add_node(&mut self, label: &str) -> &mut Self {
        if !label.is_empty() {
            self.intern(label);
        }
        self
    }

    /// Registers an edge. The first pair with an empty label is reported by
    /// [`GraphBuilder::build`] with its 1-based position.
    pub fn add_edge(&mut self, a: &str, b: &str) -> &mut Self {
        self.pairs_seen += 1;
        if a.is_empty() || b.is_empty() {
            self.empty_label_at.get_or_insert(self.pairs_seen);
            return self;
        }
        let a = self.intern(a);
        let b = self.intern(b);
        self.edges.push((a, b));
        self
    }

    pub fn build(self) -> Result<(Graph, BuildReport), GraphError> {
        if let Some(line) = self.empty_label_at {
            return Err(GraphError::EmptyLabel { line });
        }
        if self.labels.is_empty() {
            return Err(GraphError::Empty);
        }
        if self.labels.len() > u32::MAX as usize {
            return Err(GraphError::TooManyNodes);
        }
        // BTreeMap iterates in label order: rank = final id.
        let mut remap = vec![0usize; self.labels.len()];
        let mut labels = Vec::with_capacity(self.labels.len());
        for (rank, (label, provisional)) in self.labels.into_iter().enumerate() {
            remap[provisional] = rank;
            labels.push(label);
        }
        let edges = self.edges.into_iter().map(|(a, b)| (remap[a], remap[b]));
        Ok(Graph::assemble(labels, edges))
    }
}

/// Builds a graph from labelled pairs, dropping self-loops and duplicates.
pub fn build_graph<I, A, B>(edges: I) -> Result<(Graph, BuildReport), GraphError>
where
    I: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let mut builder = GraphBuilder::new();
    for (a, b) in edges {
        builder.add_edge(a.as_ref(), b.as_ref());
    }
    builder.build()
}

impl Graph {
    /// Graph on `n` nodes from index pairs. Labels are the zero-padded indices,
    /// so label order and id order coincide.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        assert!(n <= u32::MAX as usize);
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
        }
        let width = if n <= 1 { 1 } else { digits(n - 1) };
        let labels = (0..n).map(|i| alloc::format!("{i:0width$}")).collect();
        Graph::assemble(labels, edges.iter().copied()).0
    }

    fn assemble(
        labels: Vec<String>,
        edges: impl Iterator<Item = (usize, usize)>,
    ) -> (Graph, BuildReport) {
        let n = labels.len();
        let mut report = BuildReport::default();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                report.self_loops_dropped += 1;
                continue;
            }
            pairs.push(if a < b { (a, b) } else { (b, a) });
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        report.duplicates_dropped = before - pairs.len();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![NodeId(0); offsets[n]];
        // Pairs are sorted with a < b, so node x first receives its smaller
        // neighbors (as the `b` side) in ascending order, then its larger ones.
        for &(a, b) in &pairs {
            targets[cursor[a]] = NodeId::new(b);
            cursor[a] += 1;
            targets[cursor[b]] = NodeId::new(a);
            cursor[b] += 1;
        }
        debug_assert!((0..n).all(|v| targets[offsets[v]..offsets[v + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        (
            Graph {
                labels,
                offsets,
                targets,
            },
            report,
        )
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::new)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Sorted neighbor list. Panics on an invalid id.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let i = v.index();
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        if v.index() >= self.node_count() {
            return Err(GraphError::InvalidNode(v.index()));
        }
        Ok(self.offsets[v.index() + 1] - self.offsets[v.index()])
    }

    #[inline]
    pub(crate) fn deg(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    #[inline]
    pub(crate) fn adj(&self, i: usize) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Position of `v` within the flattened adjacency of `u`, usable as an
    /// index into per-slot arrays of length `2 * edge_count()`.
    #[inline]
    pub(crate) fn slot(&self, u: usize, v: NodeId) -> Option<usize> {
        self.adj(u)
            .binary_search(&v)
            .ok()
            .map(|k| self.offsets[u] + k)
    }

    #[inline]
    pub(crate) fn offset(&self, u: usize) -> usize {
        self.offsets[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u.index() < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks a member up by label.
    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(NodeId::new)
    }

    /// Component label per node, numbered `0..c` in order of each component's
    /// smallest id.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.adj(u) {
                    if comp[w.index()] == usize::MAX {
                        comp[w.index()] = next;
                        queue.push_back(w.index());
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

fn digits(mut x: usize) -> usize {
    let mut d = 1;
    while x >= 10 {
        x /= 10;
        d += 1;
    }
    d
}
