//! Seeded synthetic communities with a planted contribution model.
//!
//! Graphs grow by preferential attachment: each arriving member links to a
//! number of distinct existing members drawn with probability proportional to
//! degree. The number of links varies per member (uniform on
//! `1..=2*attachment-1`), so the core-periphery structure is not flat.
//! Contribution is planted as
//! `round(exp(sum_f beta_f * ln(1 + f(v)) + N(0, sigma^2)) - 1)`, which makes
//! the log-log model with offset 1 correctly specified up to rounding.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::centrality::ClosenessMode;
use crate::features::{NodeAttributes, Position};
use crate::graph::Graph;
use crate::graphlets::LocalWeights;

pub const PROFESSIONS: [&str; 3] = ["doctor", "other", "programmer"];
const MAX_TENURE_DAYS: f64 = 3650.0;

/// Feature a planted coefficient applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PlantedFeature {
    Closeness,
    Betweenness,
    Coreness,
    LocalCentrality,
    LocalSpanning,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SyntheticSpec {
    pub n: usize,
    /// Mean number of links an arriving member makes.
    pub attachment: usize,
    pub betas: BTreeMap<PlantedFeature, f64>,
    pub sigma: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            n: 2000,
            attachment: 3,
            betas: [
                (PlantedFeature::LocalCentrality, 1.0),
                (PlantedFeature::LocalSpanning, 0.5),
            ]
            .into_iter()
            .collect(),
            sigma: 0.3,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SyntheticError {
    #[error("synthetic communities need at least 10 members, got {0}")]
    TooSmall(usize),
    #[error("noise sigma must be finite and non-negative, got {0}")]
    BadSigma(f64),
    #[error("attachment must be in 1..n, got {0}")]
    BadAttachment(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCommunity {
    pub graph: Graph,
    pub attributes: BTreeMap<String, NodeAttributes>,
    /// The measures the contribution was planted on.
    pub position: Position,
}

/// Preferential-attachment graph on `n` nodes seeded from a clique of
/// `attachment + 1` nodes.
pub fn preferential_attachment(n: usize, attachment: usize, rng: &mut impl Rng) -> Graph {
    let seed_nodes = (attachment + 1).min(n);
    let mut edges = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    for a in 0..seed_nodes {
        for b in a + 1..seed_nodes {
            edges.push((a, b));
            ends.push(a);
            ends.push(b);
        }
    }
    let max_links = (2 * attachment).saturating_sub(1).max(1);
    let mut chosen: Vec<usize> = Vec::with_capacity(max_links);
    for v in seed_nodes..n {
        let links = rng.random_range(1..=max_links).min(v);
        chosen.clear();
        while chosen.len() < links {
            let t = if ends.is_empty() {
                rng.random_range(0..v)
            } else {
                ends[rng.random_range(0..ends.len())]
            };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            ends.push(t);
            ends.push(v);
        }
    }
    Graph::from_index_edges(n, &edges)
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticCommunity, SyntheticError> {
    if spec.n < 10 {
        return Err(SyntheticError::TooSmall(spec.n));
    }
    if !(spec.sigma >= 0.0 && spec.sigma.is_finite()) {
        return Err(SyntheticError::BadSigma(spec.sigma));
    }
    if spec.attachment == 0 || spec.attachment >= spec.n {
        return Err(SyntheticError::BadAttachment(spec.attachment));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = preferential_attachment(spec.n, spec.attachment, &mut rng);
    let position = Position::compute(&graph, ClosenessMode::Exact, LocalWeights::default())
        .expect("exact closeness cannot fail");

    let noise = Normal::new(0.0, spec.sigma).expect("sigma validated");
    let mut attributes = BTreeMap::new();
    for v in graph.nodes() {
        let i = v.index();
        let mut eta = 0.0;
        for (&feature, &beta) in &spec.betas {
            let x = match feature {
                PlantedFeature::Closeness => position.global.closeness[i],
                PlantedFeature::Betweenness => position.global.betweenness[i],
                PlantedFeature::Coreness => f64::from(position.global.coreness[i]),
                PlantedFeature::LocalCentrality => position.local[i].local_centrality,
                PlantedFeature::LocalSpanning => position.local[i].local_spanning,
            };
            eta += beta * libm::log1p(x);
        }
        // Draws happen in a fixed order even when sigma is zero.
        let eps: f64 = noise.sample(&mut rng);
        let tenure_days = libm::round(rng.random::<f64>() * MAX_TENURE_DAYS);
        let profession = PROFESSIONS[rng.random_range(0..PROFESSIONS.len())];
        let contribution = libm::round(libm::expm1(eta + eps)).max(0.0) as u64;
        attributes.insert(
            graph.label(v).to_string(),
            NodeAttributes {
                contribution,
                tenure_days,
                profession: profession.to_string(),
            },
        );
    }
    Ok(SyntheticCommunity {
        graph,
        attributes,
        position,
    })
}

/// Stable member label for synthetic node `i` of `n`.
pub fn member_label(i: usize, n: usize) -> String {
    let width = format!("{}", n.saturating_sub(1)).len();
    format!("{i:0width$}")
}
