//! Extremal families and test corpora.
//!
//! Numbering: branch vertices come first, then subdivision vertices, one
//! leg (or subdivided edge) after another, each leg ordered away from its
//! first endpoint.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{SimpleGraph, Vertex};
use crate::io::emit_graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameter {name} = {value} out of range ({expected})")]
    OutOfRange { name: &'static str, value: usize, expected: &'static str },
}

fn need(name: &'static str, value: usize, ok: bool, expected: &'static str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::OutOfRange { name, value, expected })
    }
}

/// `K_{1,r+1}` with every edge subdivided `r - 2` times: `r^2` vertices,
/// centre 0, legs of `r - 1` vertices each.
pub fn spider(r: usize) -> Result<SimpleGraph, GenError> {
    need("r", r, r >= 2, "r >= 2")?;
    let leg = r - 1;
    let n = 1 + (r + 1) * leg;
    let mut edges = Vec::new();
    for l in 0..=r {
        let base = 1 + l * leg;
        edges.push((0, base));
        for t in 1..leg {
            edges.push((base + t - 1, base + t));
        }
    }
    Ok(SimpleGraph::from_edges(n, &edges).expect("spider edges are valid"))
}

/// `K_4` with five edges subdivided `r - 1` times and the edge `{2, 3}`
/// subdivided `r + 1` times: `6r` vertices.
pub fn subdivided_k4(r: usize) -> Result<SimpleGraph, GenError> {
    need("r", r, r >= 2, "r >= 2")?;
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut g = SimpleGraph::new(6 * r);
    let mut next = 4;
    for (i, &(a, b)) in k4.iter().enumerate() {
        let len = if i == 5 { r + 1 } else { r - 1 };
        let mut prev = a;
        for _ in 0..len {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        g.add_edge(prev, b).unwrap();
    }
    debug_assert_eq!(next, 6 * r);
    Ok(g)
}

/// `r + 2` internally disjoint paths of length `r` between vertices 0 and
/// 1: `r^2 + r` vertices. The missing-factor property in the `(r-1)`th power
/// is only claimed for even `r`.
pub fn theta(r: usize) -> Result<SimpleGraph, GenError> {
    need("r", r, r >= 2, "r >= 2")?;
    let mut g = SimpleGraph::new(r * r + r);
    let mut next = 2;
    for _ in 0..r + 2 {
        let mut prev = 0;
        for _ in 0..r - 1 {
            g.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1).unwrap();
    }
    Ok(g)
}

/// A Hamiltonian cycle on a random vertex order plus each remaining pair
/// as a chord with probability 1/2. Always 2-connected.
pub fn random_2connected(n: usize, seed: u64) -> Result<SimpleGraph, GenError> {
    random_2connected_with_density(n, 0.5, seed)
}

/// As [`random_2connected`] with chord probability `p`.
pub fn random_2connected_with_density(n: usize, p: f64, seed: u64) -> Result<SimpleGraph, GenError> {
    need("n", n, n >= 3, "n >= 3")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut g = SimpleGraph::new(n);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    Ok(g)
}

/// A random open ear decomposition: a cycle, then paths between distinct
/// existing vertices, until there are `n` vertices; finally each absent pair
/// becomes a chord with probability `chord_p`. Unlike the cycle-plus-chords
/// generator this reaches non-Hamiltonian graphs such as theta graphs.
pub fn random_ear_2connected(n: usize, chord_p: f64, seed: u64) -> Result<SimpleGraph, GenError> {
    need("n", n, n >= 3, "n >= 3")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.gen_range(3..=n);
    let mut g = SimpleGraph::new(n);
    for i in 0..first {
        g.add_edge(i, (i + 1) % first).unwrap();
    }
    let mut used = first;
    while used < n {
        let len = rng.gen_range(1..=(n - used).min(4));
        let a = rng.gen_range(0..used);
        let mut b = rng.gen_range(0..used - 1);
        if b >= a {
            b += 1;
        }
        let mut prev = a;
        for x in used..used + len {
            g.add_edge(prev, x).unwrap();
            prev = x;
        }
        g.add_edge(prev, b).unwrap();
        used += len;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(chord_p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    // Relabel so that ear structure is not visible in the vertex order.
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut out = SimpleGraph::new(n);
    for (u, v) in g.edges() {
        out.add_edge(perm[u], perm[v]).unwrap();
    }
    Ok(out)
}

/// A uniformly random labelled tree (random Prüfer sequence).
pub fn random_tree(n: usize, seed: u64) -> Result<SimpleGraph, GenError> {
    need("n", n, n >= 1, "n >= 1")?;
    let mut g = SimpleGraph::new(n);
    if n == 1 {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<Vertex> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &x in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        g.add_edge(leaf, x).unwrap();
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<Vertex> = leaves.into_iter().collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    Ok(g)
}

/// Largest order accepted by [`enumerate_2connected`].
pub const ENUMERATION_LIMIT: usize = 7;

/// Every 2-connected graph on `n` labelled vertices, or one representative
/// per isomorphism class when `dedup` is set.
pub fn enumerate_2connected(n: usize, dedup: bool) -> Result<Vec<SimpleGraph>, GenError> {
    need("n", n, (3..=ENUMERATION_LIMIT).contains(&n), "3 <= n <= 7")?;
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        // 2-connected graphs on n vertices have at least n edges.
        if (mask.count_ones() as usize) < n {
            continue;
        }
        let mut g = SimpleGraph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        if !g.is_biconnected() {
            continue;
        }
        if dedup && !seen.insert(canonical_form(&g)) {
            continue;
        }
        out.push(g);
    }
    Ok(out)
}

/// Largest order accepted by [`graph_classes`] and [`two_connected_classes`].
pub const CLASS_LIMIT: usize = 8;

/// One representative of every isomorphism class of graphs on `n`
/// vertices. Each graph on `n` vertices arises from one on `n - 1` by adding
/// a vertex with some neighbourhood, so the classes are built level by level
/// and deduplicated by [`canonical_form`].
pub fn graph_classes(n: usize) -> Result<Vec<SimpleGraph>, GenError> {
    need("n", n, (1..=CLASS_LIMIT).contains(&n), "1 <= n <= 8")?;
    let mut level = vec![SimpleGraph::new(1)];
    for k in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << k) {
                let mut h = SimpleGraph::new(k + 1);
                for (u, v) in g.edges() {
                    h.add_edge(u, v).unwrap();
                }
                for u in (0..k).filter(|u| mask >> u & 1 == 1) {
                    h.add_edge(u, k).unwrap();
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// One representative per isomorphism class of 2-connected graphs on `n`
/// vertices, `3 <= n <= 8`.
pub fn two_connected_classes(n: usize) -> Result<Vec<SimpleGraph>, GenError> {
    need("n", n, (3..=CLASS_LIMIT).contains(&n), "3 <= n <= 8")?;
    Ok(graph_classes(n)?.into_iter().filter(SimpleGraph::is_biconnected).collect())
}

/// Colour refinement by degree: each vertex's colour is replaced by its old
/// colour together with the sorted colours of its neighbours until stable.
fn refined_colours(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = {
            let mut d: Vec<_> = signatures.iter().collect();
            d.sort();
            d.dedup();
            d
        };
        let next: Vec<usize> = signatures.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = distinct.len();
        colour = next;
        if after == before {
            return colour;
        }
    }
}

/// Canonical graph6 string: the lexicographically smallest encoding over all
/// relabellings that order vertices by refined colour. Exact; intended for
/// small graphs.
pub fn canonical_form(g: &SimpleGraph) -> String {
    let n = g.n();
    let colour = refined_colours(g);
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| colour[v]);
    for v in order {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == colour[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<String> = None;
    let mut sequence = Vec::with_capacity(n);
    permute_cells(g, &cells, 0, &mut sequence, &mut best);
    best.unwrap_or_default()
}

fn permute_cells(
    g: &SimpleGraph,
    cells: &[Vec<Vertex>],
    cell: usize,
    sequence: &mut Vec<Vertex>,
    best: &mut Option<String>,
) {
    if cell == cells.len() {
        // sequence[i] is the old vertex placed at new position i
        let n = g.n();
        let mut position = vec![0; n];
        for (i, &v) in sequence.iter().enumerate() {
            position[v] = i;
        }
        let mut h = SimpleGraph::new(n);
        for (u, v) in g.edges() {
            h.add_edge(position[u], position[v]).unwrap();
        }
        let s = emit_graph6(&h);
        if best.as_ref().is_none_or(|b| s < *b) {
            *best = Some(s);
        }
        return;
    }
    let mut members = cells[cell].clone();
    heap_permutations(&mut members, &mut |perm| {
        let len = sequence.len();
        sequence.extend_from_slice(perm);
        permute_cells(g, cells, cell + 1, sequence, best);
        sequence.truncate(len);
    });
}

fn heap_permutations(items: &mut [Vertex], visit: &mut dyn FnMut(&[Vertex])) {
    fn go(k: usize, items: &mut [Vertex], visit: &mut dyn FnMut(&[Vertex])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, visit);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, visit);
    }
    let k = items.len();
    go(k, items, visit);
}
