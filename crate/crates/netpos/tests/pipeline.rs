//! Ingest invariants and whole-pipeline properties.

use std::collections::BTreeSet;

use chrono::{Duration, TimeZone, Utc};
use netpos::formats;
use netpos::ingest::{
    build_interaction_network, compute_attributes, CodeDetection, ForumPost, InteractionPolicy,
    PolicyMode,
};
use netpos::pipeline;
use netpos_core::stats::CompareOptions;
use netpos_core::synthetic::{generate_synthetic, PlantedFeature, SyntheticSpec};
use netpos_core::{compare_three, ClosenessMode, LocalWeights};
use proptest::prelude::*;

fn arb_posts() -> impl Strategy<Value = Vec<ForumPost>> {
    prop::collection::vec((0u8..4, 0u8..7, 0i64..500, any::<bool>()), 1..40).prop_map(|rows| {
        let base = Utc.with_ymd_and_hms(2020, 1, 1, 0, 0, 0).unwrap();
        rows.into_iter()
            .map(|(t, a, h, code)| ForumPost {
                thread_id: format!("t{t}"),
                author: format!("u{a}"),
                timestamp: base + Duration::hours(h),
                body: Some(if code {
                    "x;\ny;\nz;".into()
                } else {
                    "plain".into()
                }),
                has_code: None,
            })
            .collect()
    })
}

fn co_thread() -> InteractionPolicy {
    InteractionPolicy {
        mode: PolicyMode::CoThread,
        window: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn node_set_is_the_author_set(posts in arb_posts()) {
        let authors: BTreeSet<&str> = posts.iter().map(|p| p.author.as_str()).collect();
        for policy in [InteractionPolicy::default(), co_thread()] {
            let net = build_interaction_network(&posts, policy).unwrap();
            let labels: BTreeSet<&str> = net.graph.labels().iter().map(String::as_str).collect();
            prop_assert_eq!(&labels, &authors);
        }
    }

    #[test]
    fn reply_chain_edges_are_co_thread_edges(posts in arb_posts()) {
        let rc = build_interaction_network(&posts, InteractionPolicy::default()).unwrap();
        let ct = build_interaction_network(&posts, co_thread()).unwrap();
        for pair in rc.weights.keys() {
            prop_assert!(ct.weights.contains_key(pair));
        }
    }

    #[test]
    fn co_thread_clique_ignores_order(mut posts in arb_posts(), seed in any::<u64>()) {
        for p in &mut posts {
            p.thread_id = "only".into();
        }
        let k = posts.iter().map(|p| &p.author).collect::<BTreeSet<_>>().len();
        let a = build_interaction_network(&posts, co_thread()).unwrap();
        prop_assert_eq!(a.graph.edge_count(), k * (k - 1) / 2);
        let mut shuffled = posts.clone();
        let len = shuffled.len();
        for i in 0..len {
            shuffled.swap(i, (seed as usize).wrapping_mul(i + 7) % len);
        }
        let b = build_interaction_network(&shuffled, co_thread()).unwrap();
        prop_assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn contribution_ignores_post_order(posts in arb_posts()) {
        let cfg = CodeDetection::default();
        let a = compute_attributes(&posts, &cfg, None);
        let mut rev = posts.clone();
        rev.reverse();
        let b = compute_attributes(&rev, &cfg, None);
        prop_assert_eq!(&a.attributes, &b.attributes);
        for (m, attr) in &a.attributes {
            let total = posts.iter().filter(|p| &p.author == m).count() as u64;
            prop_assert!(attr.contribution <= total);
            prop_assert!(attr.tenure_days >= 0.0);
        }
    }
}

#[test]
fn noiseless_local_plant_fits_almost_perfectly() {
    let spec = SyntheticSpec {
        n: 600,
        sigma: 0.0,
        seed: 11,
        ..SyntheticSpec::default()
    };
    assert!(spec.betas.contains_key(&PlantedFeature::LocalCentrality));
    let s = generate_synthetic(&spec).unwrap();
    let p = &s.position;
    let t = netpos_core::assemble_features(&s.graph, &s.attributes, &p.global, &p.orbits, &p.local)
        .unwrap()
        .table;
    let report = compare_three(&t, CompareOptions::default()).unwrap();
    let r2 = report.model("local").unwrap().r_squared;
    assert!(r2 >= 0.99, "{r2}");
}

#[test]
fn feature_file_round_trips_through_csv() {
    let s = generate_synthetic(&SyntheticSpec {
        n: 150,
        ..SyntheticSpec::default()
    })
    .unwrap();
    let edges = formats::EdgeList {
        edges: s
            .graph
            .edges()
            .map(|(u, v)| (s.graph.label(u).to_string(), s.graph.label(v).to_string()))
            .collect(),
    };
    let (g, report) = pipeline::graph_from_edges(&edges, s.attributes.keys()).unwrap();
    assert_eq!(g, s.graph);
    let run = pipeline::compute_features(
        &g,
        report,
        &s.attributes,
        ClosenessMode::Exact,
        LocalWeights::default(),
        2,
    )
    .unwrap();
    let mut buf = Vec::new();
    formats::write_features(&mut buf, &run.table).unwrap();
    let back = formats::read_features(buf.as_slice()).unwrap();
    for (a, b) in run.table.rows.iter().zip(&back.rows) {
        assert_eq!(a.member, b.member);
        assert_eq!(a.orbits, b.orbits);
        assert_eq!(a.coreness, b.coreness);
        assert!((a.betweenness - b.betweenness).abs() <= 1e-11 * a.betweenness.max(1.0));
        assert!((a.closeness - b.closeness).abs() <= 1e-11);
    }
    let direct = compare_three(&run.table, CompareOptions::default()).unwrap();
    let via_csv = compare_three(&back, CompareOptions::default()).unwrap();
    assert_eq!(direct.preferred_model, via_csv.preferred_model);
    let (a, b) = (
        direct.model("both").unwrap(),
        via_csv.model("both").unwrap(),
    );
    assert!((a.r_squared - b.r_squared).abs() < 1e-9);
}
