#![allow(clippy::needless_range_loop)]

mod common;

use common::distances;
use ncpart::generators as gen;
use ncpart::io::{emit_graph, parse_edge_list, parse_graph, parse_graph6, GraphFormat};
use ncpart::{graph_power, SimpleGraph};
use proptest::prelude::*;

fn connected_without(g: &SimpleGraph, removed: &[usize]) -> bool {
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    common::connected_within(g, &keep)
}

fn brute_biconnected(g: &SimpleGraph) -> bool {
    g.n() >= 3 && connected_without(g, &[]) && (0..g.n()).all(|v| connected_without(g, &[v]))
}

#[test]
fn power_examples() {
    let c5 = SimpleGraph::cycle(5);
    assert_eq!(graph_power(&c5, 1), c5);
    assert_eq!(graph_power(&c5, 2), SimpleGraph::complete(5));
    let p4 = graph_power(&SimpleGraph::path(4), 2);
    assert_eq!(p4.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
}

#[test]
fn connectivity_examples() {
    assert!(SimpleGraph::cycle(4).is_biconnected());
    assert!(!SimpleGraph::path(3).is_biconnected());
    let mut diamond = SimpleGraph::complete(4);
    diamond.remove_edge(0, 1);
    assert!(diamond.is_biconnected());

    let (cut, comp) = SimpleGraph::cycle(4).smallest_2cut_component().unwrap().unwrap();
    assert_eq!((cut, comp.len()), ((0, 2), 1));
    assert_eq!(SimpleGraph::complete(4).smallest_2cut_component().unwrap(), None);
    let theta = gen::theta(2).unwrap();
    let (cut, comp) = theta.smallest_2cut_component().unwrap().unwrap();
    assert_eq!((cut, comp.len()), ((0, 1), 1));
}

#[test]
fn parse_examples() {
    let c4 = parse_edge_list("4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(c4, SimpleGraph::cycle(4));
    assert_eq!(parse_graph6("C~").unwrap(), SimpleGraph::complete(4));
    assert!(parse_edge_list("2\n0 0\n").is_err());
    assert!(parse_edge_list("# comment\n3 # order\n0 1\n1 2 # edge\n").is_ok());
}

#[test]
fn biconnectivity_matches_brute_force_on_small_orders() {
    for n in 3..=7 {
        for g in gen::graph_classes(n).unwrap() {
            assert_eq!(g.is_biconnected(), brute_biconnected(&g), "{:?}", g.edges());
        }
    }
}

#[test]
fn smallest_cut_component_is_minimum() {
    for g in gen::two_connected_classes(7).unwrap() {
        let found = g.smallest_2cut_component().unwrap();
        let mut best: Option<usize> = None;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let keep: Vec<usize> = (0..g.n()).filter(|&x| x != u && x != v).collect();
                if common::connected_within(&g, &keep) {
                    continue;
                }
                // Smallest component by flood fill from each remaining vertex.
                for &s in &keep {
                    let mut comp = vec![s];
                    let mut i = 0;
                    while i < comp.len() {
                        let x = comp[i];
                        i += 1;
                        for &y in &keep {
                            if !comp.contains(&y) && g.has_edge(x, y) {
                                comp.push(y);
                            }
                        }
                    }
                    best = Some(best.map_or(comp.len(), |b| b.min(comp.len())));
                }
            }
        }
        assert_eq!(found.map(|(_, c)| c.len()), best);
    }
}

fn small_graph() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = SimpleGraph::new(n);
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            for ((u, v), on) in pairs.zip(bits) {
                if on {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn power_matches_distances(g in small_graph(), k in 1usize..=5) {
        let d = distances(&g);
        let p = graph_power(&g, k);
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(p.has_edge(u, v), u != v && d[u][v] <= k);
            }
        }
    }

    #[test]
    fn power_is_monotone(g in small_graph(), k in 1usize..=4) {
        let a = graph_power(&g, k);
        let b = graph_power(&g, k + 1);
        for (u, v) in a.edges() {
            prop_assert!(b.has_edge(u, v));
        }
    }

    #[test]
    fn power_beyond_diameter_is_complete(n in 3usize..=12, seed in any::<u64>()) {
        let g = gen::random_2connected(n, seed).unwrap();
        let diameter = distances(&g).into_iter().flatten().max().unwrap();
        prop_assert_eq!(graph_power(&g, diameter), SimpleGraph::complete(n));
    }

    #[test]
    fn formats_round_trip(g in small_graph()) {
        for format in [GraphFormat::EdgeList, GraphFormat::Graph6] {
            let text = emit_graph(&g, format);
            prop_assert_eq!(&parse_graph(&text, format).unwrap(), &g);
        }
    }
}
