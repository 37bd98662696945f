//! Small independent checks shared by the integration tests. They use only
//! adjacency queries, never the library's own verifiers.

#![allow(dead_code, clippy::needless_range_loop)]

use ncpart::{SimpleGraph, Vertex};

/// Whether `set` induces a connected subgraph, by flood fill.
pub fn connected_within(g: &SimpleGraph, set: &[Vertex]) -> bool {
    let Some(&start) = set.first() else { return true };
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        i += 1;
        for &w in set {
            if !seen.contains(&w) && g.has_edge(v, w) {
                seen.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Nearly connected: connected as is, or after adding one outside vertex.
pub fn nearly_connected(g: &SimpleGraph, set: &[Vertex]) -> bool {
    connected_within(g, set)
        || (0..g.n()).filter(|x| !set.contains(x)).any(|x| {
            let mut s = set.to_vec();
            s.push(x);
            connected_within(g, &s)
        })
}

/// Parts are disjoint and cover `0..n`.
pub fn is_partition(parts: &[Vec<Vertex>], n: usize) -> bool {
    let mut seen = vec![false; n];
    for p in parts {
        for &v in p {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Floyd-Warshall distances, `usize::MAX` when unreachable.
pub fn distances(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut d = vec![vec![usize::MAX; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// The 3-cube: vertices are 3-bit words, edges join words at Hamming
/// distance one.
pub fn cube() -> SimpleGraph {
    let mut g = SimpleGraph::new(8);
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}
