//! Network-position measures for members of an interaction network.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`graph`]: the immutable undirected simple graph every other module reads.
//! - [`centrality`] and [`coreness`]: global position (closeness, betweenness,
//!   k-core number).
//! - [`graphlets`]: exact per-node orbit counts for the nine connected graphlets
//!   on two to four nodes, plus the composite local features built from them.
//! - [`stats`]: log-log OLS fits, nested F-tests and the three-model comparison.
//! - [`features`] and [`synthetic`]: feature-table assembly and a seeded
//!   synthetic community generator.
//! - [`oracle`]: brute-force reference implementations used for verification.
//!
//! File formats, ingest of forum logs and the command-line interface live in the
//! companion `netpos` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod centrality;
pub mod coreness;
pub mod features;
pub mod graph;
pub mod graphlets;
pub mod oracle;
pub mod stats;
pub mod synthetic;

pub use centrality::{
    betweenness, closeness_estimated, closeness_exact, closeness_harmonic, ClosenessMode,
    GlobalFeatures,
};
pub use coreness::coreness;
pub use features::{assemble_features, FeatureRow, FeatureTable, NodeAttributes};
pub use graph::{BuildReport, Graph, GraphBuilder, GraphError, NodeId};
pub use graphlets::{count_orbits, LocalWeights, OrbitVector, ORBIT_COUNT};
pub use stats::{compare_three, nested_f_test, ols_fit, RegressionResult, StatsError};
