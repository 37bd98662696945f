//! Ground truth: nearly-connected checks, partition verification, exact
//! clique-factor search and exhaustive partition search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SimpleGraph, Vertex};

/// A block of a vertex partition, with an optional certificate that it is
/// nearly connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vertex>>,
}

impl Part {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        Part { vertices, witness: None }
    }
}

pub type Partition = Vec<Part>;

/// A set `a` is nearly connected when some subtree of `g` with at most
/// `|a| + 1` vertices contains it. Returns the vertex set of such a subtree:
/// `a` itself if it induces a connected subgraph, else `a` plus the
/// smallest vertex that connects it.
pub fn is_nearly_connected(g: &SimpleGraph, a: &[Vertex]) -> Option<Vec<Vertex>> {
    if a.is_empty() || a.iter().any(|&v| v >= g.n()) {
        return None;
    }
    let mut set = a.to_vec();
    set.sort_unstable();
    if g.induces_connected(&set) {
        return Some(set);
    }
    // Only a common neighbour of every component can help.
    let candidates: Vec<Vertex> =
        (0..g.n()).filter(|x| !set.contains(x) && set.iter().any(|&v| g.has_edge(*x, v))).collect();
    for x in candidates {
        set.push(x);
        if g.induces_connected(&set) {
            set.sort_unstable();
            return Some(set);
        }
        set.pop();
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered")]
    Uncovered(Vertex),
    #[error("part sizes {got:?} do not match expected sizes {expected:?}")]
    SizeMismatch { expected: Vec<usize>, got: Vec<usize> },
    #[error("part {index} {vertices:?} is not nearly connected")]
    NotNearlyConnected { index: usize, vertices: Vec<Vertex> },
}

/// Checks disjointness, coverage, part sizes (default: all 4, compared as
/// multisets) and near-connectivity. On success returns one witness per
/// part.
pub fn verify_partition(
    g: &SimpleGraph,
    parts: &[Vec<Vertex>],
    expected_sizes: Option<&[usize]>,
) -> Result<Vec<Vec<Vertex>>, VerifyFailure> {
    let mut seen = vec![false; g.n()];
    for part in parts {
        for &v in part {
            if v >= g.n() {
                return Err(VerifyFailure::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(VerifyFailure::Overlap(v));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(VerifyFailure::Uncovered(v));
    }
    let mut got: Vec<usize> = parts.iter().map(Vec::len).collect();
    let mut expected: Vec<usize> = match expected_sizes {
        Some(s) => s.to_vec(),
        None => vec![4; parts.len()],
    };
    got.sort_unstable();
    expected.sort_unstable();
    if got != expected {
        return Err(VerifyFailure::SizeMismatch { expected, got });
    }
    parts
        .iter()
        .enumerate()
        .map(|(index, p)| {
            is_nearly_connected(g, p).ok_or_else(|| VerifyFailure::NotNearlyConnected { index, vertices: p.clone() })
        })
        .collect()
}

/// Verifies a [`Partition`] and fills in the witnesses.
pub fn certify(g: &SimpleGraph, parts: &mut Partition, expected_sizes: Option<&[usize]>) -> Result<(), VerifyFailure> {
    let raw: Vec<Vec<Vertex>> = parts.iter().map(|p| p.vertices.clone()).collect();
    let witnesses = verify_partition(g, &raw, expected_sizes)?;
    for (p, w) in parts.iter_mut().zip(witnesses) {
        p.witness = Some(w);
    }
    Ok(())
}

/// All `r`-cliques of `g`, each sorted, in lexicographic order.
pub fn cliques_of_size(g: &SimpleGraph, r: usize) -> Vec<Vec<Vertex>> {
    fn extend(g: &SimpleGraph, r: usize, current: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        let start = current.last().map_or(0, |&v| v + 1);
        for v in start..g.n() {
            if current.iter().all(|&u| g.has_edge(u, v)) {
                current.push(v);
                extend(g, r, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        extend(g, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Exact decision of whether `g` has a `K_r`-factor, by exact cover over
/// the `r`-cliques, always branching on the uncovered vertex with the
/// fewest remaining candidate cliques.
///
/// # Panics
/// If `r < 2` or `g` has more than 128 vertices.
pub fn has_kr_factor(g: &SimpleGraph, r: usize) -> Option<Vec<Vec<Vertex>>> {
    assert!(r >= 2, "clique order must be at least 2");
    let n = g.n();
    assert!(n <= 128, "exact cover limited to 128 vertices");
    if !n.is_multiple_of(r) {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let cliques = cliques_of_size(g, r);
    let masks: Vec<u128> = cliques.iter().map(|c| c.iter().fold(0u128, |m, &v| m | 1 << v)).collect();
    let mut by_vertex = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            by_vertex[v].push(i);
        }
    }
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };

    fn search(covered: u128, full: u128, masks: &[u128], by_vertex: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        if covered == full {
            return true;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (v, options) in by_vertex.iter().enumerate() {
            if covered >> v & 1 == 1 {
                continue;
            }
            let live: Vec<usize> = options.iter().copied().filter(|&i| masks[i] & covered == 0).collect();
            if best.as_ref().is_none_or(|(_, b)| live.len() < b.len()) {
                let empty = live.is_empty();
                best = Some((v, live));
                if empty {
                    break;
                }
            }
        }
        let (_, options) = best.expect("some vertex is uncovered");
        for i in options {
            chosen.push(i);
            if search(covered | masks[i], full, masks, by_vertex, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::new();
    search(0, full, &masks, &by_vertex, &mut chosen).then(|| chosen.into_iter().map(|i| cliques[i].clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartMode {
    /// Each part is nearly connected in the graph.
    NearlyConnected,
    /// Each part is a clique in the `k`th power.
    CliqueInPower(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sizes sum to {sum}, graph has {n} vertices")]
    SizeSum { sum: usize, n: usize },
    #[error("instance with {n} vertices exceeds the exhaustive-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("part sizes must be positive")]
    ZeroSize,
}

/// Default vertex limit for [`brute_force_partition`].
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Exhaustive search for a partition into parts of the given sizes. Each
/// new part is seeded with the lowest unassigned vertex, so part order is
/// never branched on. Complete: returns `None` only if no partition exists.
pub fn brute_force_partition(
    g: &SimpleGraph,
    sizes: &[usize],
    mode: PartMode,
) -> Result<Option<Vec<Vec<Vertex>>>, OracleError> {
    brute_force_partition_with_limit(g, sizes, mode, BRUTE_FORCE_LIMIT)
}

pub fn brute_force_partition_with_limit(
    g: &SimpleGraph,
    sizes: &[usize],
    mode: PartMode,
    limit: usize,
) -> Result<Option<Vec<Vec<Vertex>>>, OracleError> {
    let n = g.n();
    let sum: usize = sizes.iter().sum();
    if sum != n {
        return Err(OracleError::SizeSum { sum, n });
    }
    if sizes.contains(&0) {
        return Err(OracleError::ZeroSize);
    }
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    // Pairwise compatibility: members of a nearly connected part of size s
    // lie within distance s of each other.
    let dist: Vec<Vec<usize>> =
        (0..n).map(|s| g.distances_from(s).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect()).collect();
    let bound = |size: usize| match mode {
        PartMode::NearlyConnected => size,
        PartMode::CliqueInPower(k) => k,
    };
    let accept = |part: &[Vertex]| match mode {
        PartMode::NearlyConnected => is_nearly_connected(g, part).is_some(),
        PartMode::CliqueInPower(k) => {
            part.iter().enumerate().all(|(i, &u)| part[i + 1..].iter().all(|&v| dist[u][v] <= k))
        }
    };

    let mut remaining: Vec<usize> = sizes.to_vec();
    remaining.sort_unstable();
    let mut assigned = vec![false; n];
    let mut parts = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn fill(
        n: usize,
        dist: &[Vec<usize>],
        bound: &dyn Fn(usize) -> usize,
        accept: &dyn Fn(&[Vertex]) -> bool,
        remaining: &mut Vec<usize>,
        assigned: &mut [bool],
        parts: &mut Vec<Vec<Vertex>>,
    ) -> bool {
        let Some(seed) = (0..n).find(|&v| !assigned[v]) else {
            return remaining.is_empty();
        };
        let mut distinct = remaining.clone();
        distinct.dedup();
        for size in distinct {
            let pos = remaining.iter().position(|&s| s == size).unwrap();
            remaining.remove(pos);
            let limit = bound(size);
            let pool: Vec<Vertex> = (seed + 1..n).filter(|&v| !assigned[v] && dist[seed][v] <= limit).collect();
            let mut current = vec![seed];
            assigned[seed] = true;
            if choose(n, dist, bound, accept, remaining, assigned, parts, &pool, 0, size, limit, &mut current) {
                return true;
            }
            assigned[seed] = false;
            remaining.insert(pos, size);
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        n: usize,
        dist: &[Vec<usize>],
        bound: &dyn Fn(usize) -> usize,
        accept: &dyn Fn(&[Vertex]) -> bool,
        remaining: &mut Vec<usize>,
        assigned: &mut [bool],
        parts: &mut Vec<Vec<Vertex>>,
        pool: &[Vertex],
        from: usize,
        size: usize,
        limit: usize,
        current: &mut Vec<Vertex>,
    ) -> bool {
        if current.len() == size {
            if !accept(current) {
                return false;
            }
            parts.push(current.clone());
            if fill(n, dist, bound, accept, remaining, assigned, parts) {
                return true;
            }
            parts.pop();
            return false;
        }
        for i in from..pool.len() {
            if pool.len() - i < size - current.len() {
                break;
            }
            let v = pool[i];
            if current.iter().all(|&u| dist[u][v] <= limit) {
                current.push(v);
                assigned[v] = true;
                if choose(n, dist, bound, accept, remaining, assigned, parts, pool, i + 1, size, limit, current) {
                    return true;
                }
                assigned[v] = false;
                current.pop();
            }
        }
        false
    }

    let found = fill(n, &dist, &bound, &accept, &mut remaining, &mut assigned, &mut parts);
    Ok(found.then_some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> SimpleGraph {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        SimpleGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn nearly_connected_examples() {
        assert_eq!(is_nearly_connected(&star(4), &[1, 2, 3, 4]), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(is_nearly_connected(&SimpleGraph::path(6), &[0, 1, 4, 5]), None);
        assert_eq!(is_nearly_connected(&SimpleGraph::complete(3), &[0, 1, 2]), Some(vec![0, 1, 2]));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_partition(&SimpleGraph::cycle(4), &[vec![0, 1, 2, 3]], None).is_ok());
        let c8 = SimpleGraph::cycle(8);
        assert!(verify_partition(&c8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], None).is_ok());
        assert!(matches!(
            verify_partition(&c8, &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]], None),
            Err(VerifyFailure::NotNearlyConnected { index: 0, .. })
        ));
        assert_eq!(verify_partition(&c8, &[vec![0, 1, 2, 3], vec![3, 4, 5, 6]], None), Err(VerifyFailure::Overlap(3)));
        assert_eq!(verify_partition(&c8, &[vec![0, 1, 2, 3]], None), Err(VerifyFailure::Uncovered(4)));
        assert!(matches!(
            verify_partition(&c8, &[vec![0, 1, 2], vec![3, 4, 5, 6, 7]], None),
            Err(VerifyFailure::SizeMismatch { .. })
        ));
        assert!(verify_partition(&c8, &[vec![0, 1, 2], vec![3, 4, 5, 6, 7]], Some(&[5, 3])).is_ok());
    }

    #[test]
    fn factor_examples() {
        assert_eq!(has_kr_factor(&SimpleGraph::complete(4), 4), Some(vec![vec![0, 1, 2, 3]]));
        assert_eq!(has_kr_factor(&SimpleGraph::complete(5), 4), None);
        assert!(has_kr_factor(&SimpleGraph::cycle(6), 2).is_some());
        assert!(has_kr_factor(&SimpleGraph::cycle(6), 3).is_none());
    }

    #[test]
    fn brute_force_examples() {
        let two_edges = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_force_partition(&two_edges, &[4], PartMode::NearlyConnected).unwrap(), None);
        assert_eq!(
            brute_force_partition(&SimpleGraph::path(4), &[4], PartMode::NearlyConnected).unwrap(),
            Some(vec![vec![0, 1, 2, 3]])
        );
        assert!(matches!(
            brute_force_partition(&SimpleGraph::path(4), &[3], PartMode::NearlyConnected),
            Err(OracleError::SizeSum { .. })
        ));
        assert!(matches!(
            brute_force_partition(&SimpleGraph::path(20), &[10, 10], PartMode::NearlyConnected),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn mixed_sizes_found() {
        let g = SimpleGraph::cycle(8);
        let parts = brute_force_partition(&g, &[3, 5], PartMode::NearlyConnected).unwrap().unwrap();
        assert!(verify_partition(&g, &parts, Some(&[3, 5])).is_ok());
    }
}
