//! k-core numbers by minimum-degree peeling.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Largest `k` such that each node lies in a subgraph of minimum degree `k`.
///
/// Bucket peeling in `O(n + m)`. Buckets are seeded in ascending id order.
pub fn coreness(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.deg(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position of degree-d nodes in `order`.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in &mut bin {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        let d = deg[v];
        pos[v] = bin[d];
        order[pos[v]] = v;
        bin[d] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    if let Some(b) = bin.first_mut() {
        *b = 0;
    }

    for i in 0..n {
        let v = order[i];
        for &u in g.adj(v) {
            let u = u.index();
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order[pu] = w;
                    order[pw] = u;
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg.into_iter().map(|d| d as u32).collect()
}

/// Peeling that removes, among nodes of current minimum degree, the one with
/// the smallest `rank[v]`. Any tie order yields the same coreness.
///
/// Panics unless `rank` has one entry per node.
pub fn coreness_with_tie_order(g: &Graph, rank: &[usize]) -> Vec<u32> {
    let n = g.node_count();
    assert_eq!(rank.len(), n);
    let mut deg: Vec<usize> = (0..n).map(|v| g.deg(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BTreeSet<(usize, usize, usize)> = (0..n).map(|v| (deg[v], rank[v], v)).collect();
    let mut core = vec![0u32; n];
    let mut k = 0usize;
    while let Some((d, _, v)) = heap.pop_first() {
        k = k.max(d);
        core[v] = k as u32;
        removed[v] = true;
        for &u in g.adj(v) {
            let u = u.index();
            if !removed[u] {
                heap.remove(&(deg[u], rank[u], u));
                deg[u] -= 1;
                heap.insert((deg[u], rank[u], u));
            }
        }
    }
    core
}
