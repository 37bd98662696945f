mod common;

use common::{distances, is_partition, nearly_connected};
use ncpart::generators as gen;
use ncpart::verify::{brute_force_partition, is_nearly_connected, PartMode, VerifyFailure};
use ncpart::{graph_power, has_kr_factor, partition_2connected, verify_partition, SimpleGraph};
use proptest::prelude::*;

#[test]
fn nearly_connected_examples() {
    let star = SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    assert_eq!(is_nearly_connected(&star, &[1, 2, 3, 4]), Some(vec![0, 1, 2, 3, 4]));
    assert_eq!(is_nearly_connected(&SimpleGraph::path(6), &[0, 1, 4, 5]), None);
    assert_eq!(is_nearly_connected(&SimpleGraph::complete(3), &[0, 1, 2]), Some(vec![0, 1, 2]));
}

#[test]
fn verify_examples() {
    let c8 = SimpleGraph::cycle(8);
    assert!(verify_partition(&SimpleGraph::cycle(4), &[vec![0, 1, 2, 3]], None).is_ok());
    assert!(verify_partition(&c8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], None).is_ok());
    assert!(matches!(
        verify_partition(&c8, &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]], None),
        Err(VerifyFailure::NotNearlyConnected { index: 0, .. })
    ));
    assert_eq!(verify_partition(&c8, &[vec![0, 1, 2, 3], vec![3, 4, 5, 6]], None), Err(VerifyFailure::Overlap(3)));
    assert_eq!(verify_partition(&c8, &[vec![0, 1, 2, 3]], None), Err(VerifyFailure::Uncovered(4)));
}

#[test]
fn factor_examples() {
    assert_eq!(has_kr_factor(&SimpleGraph::complete(4), 4), Some(vec![vec![0, 1, 2, 3]]));
    assert_eq!(has_kr_factor(&SimpleGraph::complete(5), 4), None);
}

#[test]
fn subdivided_k4_cube_has_no_factor() {
    let g = gen::subdivided_k4(4).unwrap();
    assert_eq!(g.n(), 24);
    assert_eq!(has_kr_factor(&graph_power(&g, 3), 4), None);
    // Yet the fourth power does, via the engine's partition.
    let parts = partition_2connected(&g).unwrap();
    let d = distances(&g);
    for p in &parts {
        for &a in &p.vertices {
            for &b in &p.vertices {
                assert!(d[a][b] <= 4);
            }
        }
    }
}

#[test]
fn theta_cube_has_no_factor() {
    let g = gen::theta(4).unwrap();
    assert_eq!(g.n(), 20);
    assert_eq!(has_kr_factor(&graph_power(&g, 3), 4), None);
}

#[test]
fn spider_power_threshold() {
    for r in [3, 4] {
        let t = gen::spider(r).unwrap();
        assert_eq!(has_kr_factor(&graph_power(&t, 2 * r - 3), r), None, "r = {r}");
        assert!(has_kr_factor(&graph_power(&t, 2 * r - 2), r).is_some(), "r = {r}");
    }
}

#[test]
fn brute_force_examples() {
    let two_edges = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(brute_force_partition(&two_edges, &[4], PartMode::NearlyConnected).unwrap(), None);
    assert_eq!(
        brute_force_partition(&SimpleGraph::path(4), &[4], PartMode::NearlyConnected).unwrap(),
        Some(vec![vec![0, 1, 2, 3]])
    );
    // Four leg ends fall into three parts, so some triple holds two of them
    // and needs a 5-vertex subtree: no nearly connected partition.
    let spider = gen::spider(3).unwrap();
    assert_eq!(brute_force_partition(&spider, &[3, 3, 3], PartMode::NearlyConnected).unwrap(), None);
    // Subtrees of order at most 5 suffice, so triples are cliques in T^4.
    let found = brute_force_partition(&spider, &[3, 3, 3], PartMode::CliqueInPower(4)).unwrap().unwrap();
    assert!(is_partition(&found, 9));
}

#[test]
fn every_four_and_eight_vertex_block_has_a_partition() {
    for n in [4, 8] {
        for g in gen::two_connected_classes(n).unwrap() {
            let found = brute_force_partition(&g, &vec![4; n / 4], PartMode::NearlyConnected).unwrap();
            assert!(found.is_some());
        }
    }
}

fn small_graph() -> impl Strategy<Value = SimpleGraph> {
    (2usize..=10).prop_flat_map(|n| {
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
    fn witness_search_matches_definition(g in small_graph(), mask in any::<u16>()) {
        let a: Vec<usize> = (0..g.n()).filter(|v| mask & (1 << v) != 0).collect();
        prop_assume!(!a.is_empty());
        let found = is_nearly_connected(&g, &a);
        prop_assert_eq!(found.is_some(), nearly_connected(&g, &a));
        if let Some(w) = found {
            prop_assert!(w.len() <= a.len() + 1);
            prop_assert!(a.iter().all(|v| w.contains(v)));
            // A nearly connected set is a clique in the |A|th power.
            let d = distances(&g);
            for &x in &a {
                for &y in &a {
                    prop_assert!(d[x][y] <= a.len());
                }
            }
        }
    }

    #[test]
    fn factor_matches_brute_force(g in small_graph(), r in 3usize..=4, k in 1usize..=3) {
        prop_assume!(g.n() % r == 0);
        let power = graph_power(&g, k);
        let exact = has_kr_factor(&power, r);
        let brute = brute_force_partition(&g, &vec![r; g.n() / r], PartMode::CliqueInPower(k)).unwrap();
        prop_assert_eq!(exact.is_some(), brute.is_some());
        if let Some(cliques) = exact {
            prop_assert!(is_partition(&cliques, g.n()));
            for c in &cliques {
                prop_assert!(power.is_clique(c));
            }
        }
    }
}
