mod common;

use common::{connected_within, distances, is_partition};
use ncpart::generators as gen;
use ncpart::{partition_tree, SimpleGraph, TreePartitionError};
use proptest::prelude::*;

/// Checks every documented output property and returns the parts.
fn check(g: &SimpleGraph, sizes: &[usize]) -> Vec<Vec<usize>> {
    let parts = partition_tree(g, sizes).unwrap();
    let vertices: Vec<Vec<usize>> = parts.iter().map(|p| p.vertices.clone()).collect();
    assert!(is_partition(&vertices, g.n()));
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    for (p, &s) in parts.iter().zip(sizes) {
        assert_eq!(p.vertices.len(), s);
        let w = p.witness.as_ref().unwrap();
        assert!(w.len() < 2 * s, "witness {w:?} too large for size {s}");
        assert!(p.vertices.iter().all(|v| w.contains(v)));
        assert!(connected_within(g, w));
        remaining.retain(|v| !p.vertices.contains(v));
        assert!(connected_within(g, &remaining), "remainder {remaining:?} split");
    }
    vertices
}

#[test]
fn paths() {
    assert_eq!(check(&SimpleGraph::path(4), &[4]), vec![vec![0, 1, 2, 3]]);
    let parts = check(&SimpleGraph::path(6), &[3, 3]);
    assert_eq!(parts, vec![vec![3, 4, 5], vec![0, 1, 2]]);
}

#[test]
fn spider_into_fours() {
    let spider = gen::spider(4).unwrap();
    let parts = check(&spider, &[4, 4, 4, 4]);
    // Parts of size r are cliques in the (2r-2)th power.
    let d = distances(&spider);
    for p in &parts {
        for &a in p {
            for &b in p {
                assert!(d[a][b] <= 6);
            }
        }
    }
}

#[test]
fn errors() {
    let g = SimpleGraph::path(5);
    assert_eq!(partition_tree(&g, &[2, 2]), Err(TreePartitionError::SizeMismatch { sum: 4, n: 5 }));
    assert_eq!(partition_tree(&g, &[5, 0]), Err(TreePartitionError::ZeroSize));
    let split = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(partition_tree(&split, &[2, 2]), Err(TreePartitionError::Disconnected));
}

fn tree_and_sizes() -> impl Strategy<Value = (SimpleGraph, Vec<usize>)> {
    (1usize..=30, any::<u64>(), proptest::collection::vec(1usize..=8, 1..30)).prop_map(|(n, seed, raw)| {
        let tree = gen::random_tree(n, seed).unwrap();
        let mut sizes = Vec::new();
        let mut left = n;
        for s in raw {
            if left == 0 {
                break;
            }
            let s = s.min(left);
            sizes.push(s);
            left -= s;
        }
        if left > 0 {
            sizes.push(left);
        }
        (tree, sizes)
    })
}

proptest! {
    #[test]
    fn random_trees((tree, sizes) in tree_and_sizes()) {
        check(&tree, &sizes);
    }

    #[test]
    fn connected_graphs(k in 2usize..=6, r in 2usize..=5, p in 0.0f64..0.5, seed in any::<u64>()) {
        let g = gen::random_2connected_with_density(k * r, p, seed).unwrap();
        let parts = check(&g, &vec![r; k]);
        let d = distances(&g);
        for part in &parts {
            for &a in part {
                for &b in part {
                    prop_assert!(d[a][b] <= 2 * r - 2);
                }
            }
        }
    }
}
