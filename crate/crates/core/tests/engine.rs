mod common;

use common::{cube, is_partition, nearly_connected};
use ncpart::engine::lift::guard_gaps;
use ncpart::engine::{LabeledMultigraph, ReductionChoice};
use ncpart::generators as gen;
use ncpart::verify::{brute_force_partition, PartMode};
use ncpart::{partition_2connected, partition_2connected_traced, EngineError, Label, SimpleGraph};
use proptest::prelude::*;

fn check(g: &SimpleGraph) {
    let result = partition_2connected_traced(g).unwrap();
    assert!(result.fallbacks.is_empty(), "fallbacks: {:?}", result.fallbacks);
    let parts: Vec<Vec<usize>> = result.parts.iter().map(|p| p.vertices.clone()).collect();
    assert!(is_partition(&parts, g.n()));
    for p in &parts {
        assert_eq!(p.len(), 4);
        assert!(nearly_connected(g, p), "{p:?} is not nearly connected");
    }
    let mut last_m = usize::MAX;
    for step in &result.trace {
        assert!(step.mod4_ok && step.block_ok, "{step}");
        // The base step reports the final single edge it consumes.
        if step.case != "base" {
            assert!(step.m < last_m, "{step}");
            last_m = step.m;
        }
    }
    assert!(result.trace.len() <= g.edge_count() + g.n());
}

#[test]
fn tiny_cases() {
    for g in [SimpleGraph::cycle(4), SimpleGraph::complete(4)] {
        let parts = partition_2connected(&g).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].vertices, vec![0, 1, 2, 3]);
    }
}

#[test]
fn cube_splits_in_two() {
    let q3 = cube();
    check(&q3);
    assert_eq!(partition_2connected(&q3).unwrap().len(), 2);
    let oracle = brute_force_partition(&q3, &[4, 4], PartMode::NearlyConnected).unwrap();
    assert!(oracle.is_some());
}

#[test]
fn rejects_bad_input() {
    assert_eq!(partition_2connected(&SimpleGraph::path(4)), Err(EngineError::NotBiconnected));
    assert_eq!(partition_2connected(&SimpleGraph::cycle(6)), Err(EngineError::OrderNotDivisibleBy4(6)));
}

#[test]
fn every_eight_vertex_block() {
    for g in gen::two_connected_classes(8).unwrap() {
        check(&g);
    }
}

#[test]
fn extremal_families() {
    for r in [2, 4, 6] {
        check(&gen::subdivided_k4(r).unwrap());
    }
    for r in [3, 4, 7] {
        check(&gen::theta(r).unwrap());
    }
}

#[test]
fn no_guard_gaps() {
    assert_eq!(guard_gaps(), Vec::<String>::new());
}

#[test]
fn reduction_priority() {
    let mut lg = LabeledMultigraph::new(2);
    lg.add_edge(0, 1, Label::L1, 0);
    lg.add_edge(0, 1, Label::L1, 1);
    assert_eq!(lg.find_reduction().unwrap(), ReductionChoice::Parallel(0, 1));

    let mut k4 = LabeledMultigraph::new(4);
    for (i, (u, v)) in SimpleGraph::complete(4).edges().into_iter().enumerate() {
        k4.add_edge(u, v, Label::L0, i);
    }
    assert_eq!(k4.find_reduction().unwrap(), ReductionChoice::ReducibleVertex(0));
}

fn order_and_density() -> impl Strategy<Value = (usize, f64, u64)> {
    (1usize..=8, 0.0f64..0.8, any::<u64>()).prop_map(|(k, p, s)| (4 * k, p, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_blocks_partition((n, p, seed) in order_and_density()) {
        check(&gen::random_2connected_with_density(n, p, seed).unwrap());
    }

    #[test]
    fn sparse_blocks_partition(k in 1usize..=10, chord in 0.0f64..0.3, seed in any::<u64>()) {
        check(&gen::random_ear_2connected(4 * k, chord, seed).unwrap());
    }

    #[test]
    fn deterministic((n, p, seed) in order_and_density()) {
        let g = gen::random_2connected_with_density(n, p, seed).unwrap();
        let a = partition_2connected_traced(&g).unwrap();
        let b = partition_2connected_traced(&g).unwrap();
        prop_assert_eq!(a.parts, b.parts);
        prop_assert_eq!(a.trace, b.trace);
    }
}
