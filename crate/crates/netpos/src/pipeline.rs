//! Stage orchestration: graph loading, feature computation, verification.

use std::collections::BTreeMap;
use std::thread;

use netpos_core::centrality::{closeness_estimated, closeness_of, harmonic_of, Bfs, Brandes};
use netpos_core::features::{assemble_features, Assembled, Position};
use netpos_core::graphlets::{count_orbits, taxonomy, LocalFeatures, LocalWeights, OrbitClass};
use netpos_core::oracle::{
    brute_force_betweenness, brute_force_orbits, orbit_identity_violations, verify_coreness,
};
use netpos_core::{
    coreness, ClosenessMode, GlobalFeatures, Graph, GraphBuilder, NodeAttributes, NodeId,
};
use netpos_core::{BuildReport, FeatureTable};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats::EdgeList;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Builds the graph from an edge list plus members known only from the
/// attribute file, who become isolated nodes.
pub fn graph_from_edges<'a>(
    edges: &EdgeList,
    extra_members: impl IntoIterator<Item = &'a String>,
) -> Result<(Graph, BuildReport)> {
    let mut b = GraphBuilder::new();
    for m in extra_members {
        b.add_node(m);
    }
    for (s, t) in &edges.edges {
        b.add_edge(s, t);
    }
    Ok(b.build()?)
}

fn chunk_len(n: usize, threads: usize) -> usize {
    n.div_ceil(threads.max(1)).max(1)
}

/// Per-node closeness split across `threads` workers. Each node's value
/// comes from its own BFS, so the split does not change any output bit.
pub fn closeness_parallel(g: &Graph, mode: ClosenessMode, threads: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let harmonic = match mode {
        ClosenessMode::Exact => false,
        ClosenessMode::Harmonic => true,
        ClosenessMode::Estimated { pivots, seed } => {
            return Ok(closeness_estimated(g, pivots, seed)?)
        }
    };
    let mut out = vec![0.0; n];
    thread::scope(|scope| {
        for (c, slice) in out.chunks_mut(chunk_len(n, threads)).enumerate() {
            let start = c * chunk_len(n, threads);
            scope.spawn(move || {
                let mut bfs = Bfs::new(n);
                for (i, x) in slice.iter_mut().enumerate() {
                    let v = NodeId::new(start + i);
                    *x = if harmonic {
                        harmonic_of(g, v, &mut bfs)
                    } else {
                        closeness_of(g, v, &mut bfs)
                    };
                }
            });
        }
    });
    Ok(out)
}

/// Betweenness with sources spread over `threads` workers. Dependencies are
/// summed in ascending source order and halved, matching the sequential
/// result bit for bit.
pub fn betweenness_parallel(g: &Graph, threads: usize) -> Vec<f64> {
    let n = g.node_count();
    let threads = threads.max(1);
    let mut total = vec![0.0; n];
    if threads == 1 {
        return netpos_core::betweenness(g);
    }
    let batch = threads * 8;
    let mut deltas = vec![vec![0.0; n]; batch];
    let mut start = 0;
    while start < n {
        let len = batch.min(n - start);
        thread::scope(|scope| {
            let per = chunk_len(len, threads);
            for (c, bufs) in deltas[..len].chunks_mut(per).enumerate() {
                let first = start + c * per;
                scope.spawn(move || {
                    let mut brandes = Brandes::new(n);
                    for (i, buf) in bufs.iter_mut().enumerate() {
                        buf.copy_from_slice(brandes.dependencies(g, NodeId::new(first + i)));
                    }
                });
            }
        });
        for d in &deltas[..len] {
            for (t, x) in total.iter_mut().zip(d) {
                *t += x;
            }
        }
        start += len;
    }
    for t in &mut total {
        *t /= 2.0;
    }
    total
}

pub fn position(
    g: &Graph,
    mode: ClosenessMode,
    weights: LocalWeights,
    threads: usize,
) -> Result<Position> {
    if threads <= 1 {
        return Ok(Position::compute(g, mode, weights)?);
    }
    let global = GlobalFeatures {
        closeness: closeness_parallel(g, mode, threads)?,
        betweenness: betweenness_parallel(g, threads),
        coreness: coreness(g),
    };
    let orbits = count_orbits(g);
    let local = orbits
        .iter()
        .map(|o| LocalFeatures::from_orbits(o, weights))
        .collect();
    Ok(Position {
        global,
        orbits,
        local,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMetadata {
    pub nodes: usize,
    pub edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
    pub closeness: ClosenessMode,
    pub closeness_normalization: &'static str,
    pub betweenness_normalization: &'static str,
    pub coreness_definition: &'static str,
    pub local_weights: LocalWeights,
    pub local_centrality_weights: [u32; 15],
    pub local_spanning_weights: [u32; 15],
    pub warnings: Vec<String>,
}

pub struct FeatureRun {
    pub table: FeatureTable,
    pub metadata: FeatureMetadata,
}

/// Computes every position measure and joins the attributes.
pub fn compute_features(
    g: &Graph,
    report: BuildReport,
    attrs: &BTreeMap<String, NodeAttributes>,
    mode: ClosenessMode,
    weights: LocalWeights,
    threads: usize,
) -> Result<FeatureRun> {
    let pos = position(g, mode, weights, threads)?;
    let Assembled { table, warnings } =
        assemble_features(g, attrs, &pos.global, &pos.orbits, &pos.local)?;
    let metadata = FeatureMetadata {
        nodes: g.node_count(),
        edges: g.edge_count(),
        self_loops_dropped: report.self_loops_dropped,
        duplicates_dropped: report.duplicates_dropped,
        closeness: mode,
        closeness_normalization: match mode {
            ClosenessMode::Harmonic => "mean of 1/d over the other n - 1 nodes",
            _ => "(|C| - 1) / sum of distances within the component C; 0 for isolated nodes",
        },
        betweenness_normalization: "unnormalized, unordered pairs, endpoints excluded",
        coreness_definition: "largest k such that the node is in the k-core (minimum degree k)",
        local_weights: weights,
        local_centrality_weights: weights.centrality_weights(),
        local_spanning_weights: LocalWeights::spanning_weights(),
        warnings,
    };
    Ok(FeatureRun { table, metadata })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failure: Option<String>) -> Self {
        let (status, detail) = match failure {
            None => ("PASS", String::new()),
            Some(d) => ("FAIL", d),
        };
        Check {
            name: name.to_string(),
            status,
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Fast paths against the brute-force oracles, and optionally a feature file
/// against freshly computed values.
pub fn verify(
    g: &Graph,
    max_nodes: usize,
    weights: LocalWeights,
    features: Option<&FeatureTable>,
) -> Result<Vec<Check>> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(Error::Input(format!(
            "graph has {n} nodes, above the oracle limit of {max_nodes}; \
             brute-force checks grow as n^4, pass --max-nodes to raise the limit"
        )));
    }
    let fast = count_orbits(g);
    let brute = brute_force_orbits(g);
    let mut checks = vec![Check::new(
        "orbits_vs_brute_force",
        g.nodes()
            .find(|v| fast[v.index()] != brute[v.index()])
            .map(|v| format!("first mismatch at node {}", g.label(v))),
    )];
    let bad = orbit_identity_violations(g, &fast);
    checks.push(Check::new("orbit_identities", bad.first().cloned()));

    let bc = netpos_core::betweenness(g);
    let bb = brute_force_betweenness(g);
    checks.push(Check::new(
        "betweenness_vs_brute_force",
        g.nodes()
            .find(|v| (bc[v.index()] - bb[v.index()]).abs() > 1e-9)
            .map(|v| {
                format!(
                    "node {}: {} vs {}",
                    g.label(v),
                    bc[v.index()],
                    bb[v.index()]
                )
            }),
    ));
    let core = coreness(g);
    checks.push(Check::new(
        "coreness_k_shells",
        verify_coreness(g, &core).err(),
    ));

    if let Some(table) = features {
        checks.push(Check::new(
            "feature_file",
            feature_mismatch(g, table, &fast, &bc, &core, weights),
        ));
    }
    Ok(checks)
}

fn feature_mismatch(
    g: &Graph,
    table: &FeatureTable,
    orbits: &[netpos_core::OrbitVector],
    bc: &[f64],
    core: &[u32],
    weights: LocalWeights,
) -> Option<String> {
    if table.rows.len() != g.node_count() {
        return Some(format!(
            "{} rows for {} graph members",
            table.rows.len(),
            g.node_count()
        ));
    }
    for row in &table.rows {
        let Some(v) = g.node(&row.member) else {
            return Some(format!("member {}: not in the graph", row.member));
        };
        let i = v.index();
        let local = LocalFeatures::from_orbits(&orbits[i], weights);
        let what = if row.orbits != orbits[i] {
            Some("orbit counts")
        } else if !close(row.betweenness, bc[i]) {
            Some("betweenness")
        } else if row.coreness != core[i] {
            Some("coreness")
        } else if !close(row.local_centrality, local.local_centrality) {
            Some("local_centrality")
        } else if !close(row.local_spanning, local.local_spanning) {
            Some("local_spanning")
        } else {
            None
        };
        if let Some(what) = what {
            return Some(format!("first mismatching member {}: {what}", row.member));
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct TaxonomyExport {
    pub orbits: Vec<TaxonomyRow>,
    pub omitted_from_local_centrality: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct TaxonomyRow {
    #[serde(flatten)]
    pub class: OrbitClass,
    pub graphlet_name: &'static str,
    pub graphlet_shape: &'static str,
    pub local_centrality_weight: u32,
    pub local_spanning_weight: u32,
}

pub fn taxonomy_export(weights: LocalWeights) -> TaxonomyExport {
    let cw = weights.centrality_weights();
    let sw = LocalWeights::spanning_weights();
    TaxonomyExport {
        orbits: taxonomy()
            .iter()
            .map(|c| TaxonomyRow {
                class: *c,
                graphlet_name: c.graphlet.name(),
                graphlet_shape: c.graphlet.shape(),
                local_centrality_weight: cw[c.orbit],
                local_spanning_weight: sw[c.orbit],
            })
            .collect(),
        omitted_from_local_centrality: netpos_core::graphlets::OMITTED_CENTRALITY_ORBITS,
    }
}
