#![allow(dead_code)]

use btangent::model::{BGraph, HypersurfaceComponent, Region};
use proptest::prelude::*;

/// Graph on `chis.len()` regions `N00, N01, …` with the given edge endpoints.
pub fn graph_from(chis: &[i64], edges: &[(usize, usize)], ambient_dim: u32) -> BGraph {
    let label = |i: usize| format!("N{i:02}");
    let regions = chis
        .iter()
        .enumerate()
        .map(|(i, &chi)| Region::new(label(i), chi))
        .collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| HypersurfaceComponent::new(format!("E{k:02}"), label(a), label(b)))
        .collect();
    BGraph::new(regions, edges, ambient_dim)
}

/// Random multigraphs with 1..=12 regions, up to 18 edges, loops allowed.
pub fn arb_graph() -> impl Strategy<Value = BGraph> {
    (1usize..=12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-4i64..=4, n),
                prop::collection::vec((0..n, 0..n), 0..=18),
            )
        })
        .prop_map(|(chis, edges)| graph_from(&chis, &edges, 2))
}

/// Random graphs without loops, biased towards bipartite ones so both verdicts occur.
pub fn arb_loopless_graph() -> impl Strategy<Value = BGraph> {
    (1usize..=12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-4i64..=4, n),
                prop::collection::vec((0..n, 0..n), 0..=14),
                prop::collection::vec(any::<bool>(), n),
                any::<bool>(),
            )
        })
        .prop_map(|(chis, edges, part, force_bipartite)| {
            let edges: Vec<(usize, usize)> = edges
                .into_iter()
                .filter(|&(a, b)| a != b && (!force_bipartite || part[a] != part[b]))
                .collect();
            graph_from(&chis, &edges, 2)
        })
}

/// Exhaustive search over all `2^|N|` sign assignments for one with
/// `s(a)·s(b) = target(edge)` on every edge. Regions are indexed in graph order.
pub fn brute_force_signs(g: &BGraph, target: impl Fn(usize) -> i64) -> Option<Vec<i64>> {
    let n = g.regions.len();
    assert!(n <= 20);
    let idx = |l: &str| g.regions.iter().position(|r| r.label == l).unwrap();
    let ends: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|e| (idx(&e.side_a), idx(&e.side_b)))
        .collect();
    (0u32..1 << n).find_map(|mask| {
        let s: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        ends.iter()
            .enumerate()
            .all(|(k, &(a, b))| s[a] * s[b] == target(k))
            .then_some(s)
    })
}

pub fn brute_force_two_colorable(g: &BGraph) -> bool {
    brute_force_signs(g, |_| -1).is_some()
}
