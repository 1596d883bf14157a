//! Per-member feature table: the regression input.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::centrality::{CentralityError, ClosenessMode, GlobalFeatures};
use crate::graph::Graph;
use crate::graphlets::{count_orbits, LocalFeatures, LocalWeights, OrbitVector};

pub const UNKNOWN_PROFESSION: &str = "unknown";

/// Member attributes that do not come from the network.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NodeAttributes {
    /// Posts carrying code.
    pub contribution: u64,
    pub tenure_days: f64,
    pub profession: String,
}

impl Default for NodeAttributes {
    fn default() -> Self {
        NodeAttributes {
            contribution: 0,
            tenure_days: 0.0,
            profession: UNKNOWN_PROFESSION.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeatureRow {
    pub member: String,
    pub contribution: u64,
    pub tenure_days: f64,
    pub profession: String,
    pub closeness: f64,
    pub betweenness: f64,
    pub coreness: u32,
    pub local_centrality: f64,
    pub local_spanning: f64,
    pub orbits: OrbitVector,
}

/// One row per member in ascending label order.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FeatureTable {
    pub rows: Vec<FeatureRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeatureError {
    #[error("{what} covers {got} nodes, graph has {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("attributes name members absent from the graph: {}", .extra.join(", "))]
    UnknownMembers { extra: Vec<String> },
}

/// Position measures for every node of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Position {
    pub global: GlobalFeatures,
    pub orbits: Vec<OrbitVector>,
    pub local: Vec<LocalFeatures>,
}

impl Position {
    pub fn compute(
        g: &Graph,
        mode: ClosenessMode,
        weights: LocalWeights,
    ) -> Result<Self, CentralityError> {
        let global = GlobalFeatures::compute(g, mode)?;
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
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assembled {
    pub table: FeatureTable,
    /// One message per member that fell back to default attributes.
    pub warnings: Vec<String>,
}

/// Joins per-node measures with member attributes.
///
/// Members without attributes get [`NodeAttributes::default`] and a warning;
/// attributes for members outside the graph are an error.
pub fn assemble_features(
    g: &Graph,
    attrs: &BTreeMap<String, NodeAttributes>,
    global: &GlobalFeatures,
    orbits: &[OrbitVector],
    local: &[LocalFeatures],
) -> Result<Assembled, FeatureError> {
    let n = g.node_count();
    for (what, got) in [
        ("closeness", global.closeness.len()),
        ("betweenness", global.betweenness.len()),
        ("coreness", global.coreness.len()),
        ("orbit counts", orbits.len()),
        ("local features", local.len()),
    ] {
        if got != n {
            return Err(FeatureError::LengthMismatch {
                what,
                expected: n,
                got,
            });
        }
    }
    let extra: Vec<String> = attrs
        .keys()
        .filter(|m| g.node(m).is_none())
        .cloned()
        .collect();
    if !extra.is_empty() {
        return Err(FeatureError::UnknownMembers { extra });
    }

    let mut warnings = Vec::new();
    let rows = g
        .nodes()
        .map(|v| {
            let i = v.index();
            let member = g.label(v);
            let a = match attrs.get(member) {
                Some(a) => a.clone(),
                None => {
                    warnings.push(format!("member {member}: no attributes, using defaults"));
                    NodeAttributes::default()
                }
            };
            FeatureRow {
                member: member.to_string(),
                contribution: a.contribution,
                tenure_days: a.tenure_days,
                profession: a.profession,
                closeness: global.closeness[i],
                betweenness: global.betweenness[i],
                coreness: global.coreness[i],
                local_centrality: local[i].local_centrality,
                local_spanning: local[i].local_spanning,
                orbits: orbits[i],
            }
        })
        .collect();
    Ok(Assembled {
        table: FeatureTable { rows },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Graph, Position) {
        let g = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let p = Position::compute(&g, ClosenessMode::Exact, LocalWeights::default()).unwrap();
        (g, p)
    }

    fn attrs(g: &Graph) -> BTreeMap<String, NodeAttributes> {
        g.labels()
            .iter()
            .enumerate()
            .map(|(i, l)| {
                (
                    l.clone(),
                    NodeAttributes {
                        contribution: i as u64,
                        tenure_days: 10.0 * i as f64,
                        profession: "doctor".to_string(),
                    },
                )
            })
            .collect()
    }

    #[test]
    fn full_inputs() {
        let (g, p) = setup();
        let a = assemble_features(&g, &attrs(&g), &p.global, &p.orbits, &p.local).unwrap();
        assert!(a.warnings.is_empty());
        assert_eq!(a.table.rows.len(), 5);
        let r = &a.table.rows[2];
        assert_eq!(r.member, "2");
        assert_eq!(r.contribution, 2);
        assert_eq!(r.betweenness, p.global.betweenness[2]);
        assert_eq!(r.orbits, p.orbits[2]);
    }

    #[test]
    fn missing_member_defaults() {
        let (g, p) = setup();
        let mut at = attrs(&g);
        at.remove("4");
        let a = assemble_features(&g, &at, &p.global, &p.orbits, &p.local).unwrap();
        assert_eq!(a.warnings.len(), 1);
        assert_eq!(a.table.rows[4].profession, UNKNOWN_PROFESSION);
        assert_eq!(a.table.rows[4].contribution, 0);
    }

    #[test]
    fn extra_member_is_error() {
        let (g, p) = setup();
        let mut at = attrs(&g);
        at.insert("ghost".to_string(), NodeAttributes::default());
        let err = assemble_features(&g, &at, &p.global, &p.orbits, &p.local).unwrap_err();
        assert_eq!(
            err,
            FeatureError::UnknownMembers {
                extra: alloc::vec!["ghost".to_string()]
            }
        );
        let err = assemble_features(&g, &attrs(&g), &p.global, &p.orbits[..3], &p.local);
        assert!(matches!(err, Err(FeatureError::LengthMismatch { .. })));
    }
}
