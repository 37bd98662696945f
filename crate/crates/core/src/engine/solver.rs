//! Local assembly: given the loose active vertices around a reduction, pick
//! the trees handed to the enclosing edge and split the rest into nearly
//! connected 4-sets. All checks run against the original graph.

use std::collections::HashMap;

use crate::graph::{SimpleGraph, Vertex};
use crate::labels::TreeSetId::{self, *};

use super::ops::BoundTree;

/// A tree requested at `root` from set `set`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Target {
    pub root: Vertex,
    pub set: TreeSetId,
}

#[derive(Debug, Clone)]
pub(crate) struct Assembly {
    pub tail: Option<BoundTree>,
    pub head: Option<BoundTree>,
    pub parts: Vec<Vec<Vertex>>,
}

/// Largest pool the solver accepts.
pub(crate) const POOL_LIMIT: usize = 64;

fn connected(g: &SimpleGraph, set: &[Vertex]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut reached = vec![false; set.len()];
    reached[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..set.len() {
            if !reached[j] && g.has_edge(set[i], set[j]) {
                reached[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == set.len()
}

/// `set` plus at most one extra vertex induces a connected subgraph.
/// Returns the extra vertex when one is needed.
pub(crate) fn connector(g: &SimpleGraph, set: &[Vertex]) -> Option<Option<Vertex>> {
    if connected(g, set) {
        return Some(None);
    }
    let mut candidates: Vec<Vertex> = set.iter().flat_map(|&v| g.neighbors(v)).filter(|x| !set.contains(x)).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut with = set.to_vec();
    with.push(0);
    for x in candidates {
        *with.last_mut().unwrap() = x;
        if connected(g, &with) {
            return Some(Some(x));
        }
    }
    None
}

/// Whether `actives` attached at `root` form a tree of `set`; returns the
/// dummy used, if any.
pub(crate) fn fits(g: &SimpleGraph, root: Vertex, set: TreeSetId, actives: &[Vertex]) -> Option<Option<Vertex>> {
    if actives.len() != set.active_count() {
        return None;
    }
    let mut with_root = Vec::with_capacity(actives.len() + 1);
    with_root.push(root);
    with_root.extend_from_slice(actives);
    match set {
        S0 => Some(None),
        S1 | S2 | S3 => connected(g, &with_root).then_some(None),
        S1p | S2p | S3p => connector(g, &with_root),
        S2m => actives.iter().all(|&x| g.has_edge(root, x)).then_some(None),
        S3m => {
            let root_degree = actives.iter().filter(|&&x| g.has_edge(root, x)).count();
            (root_degree >= 2 && connected(g, &with_root)).then_some(None)
        }
        S5m => {
            for a in 0..5 {
                for b in a + 1..5 {
                    let pair = [root, actives[a], actives[b]];
                    let triple: Vec<Vertex> =
                        std::iter::once(root).chain((0..5).filter(|&i| i != a && i != b).map(|i| actives[i])).collect();
                    if connected(g, &pair) && connected(g, &triple) {
                        return Some(None);
                    }
                }
            }
            None
        }
    }
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(u64) -> bool) {
    fn go(start: usize, n: usize, k: usize, mask: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return visit(mask);
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            if go(i + 1, n, k - 1, mask | 1 << i, visit) {
                return true;
            }
        }
        false
    }
    go(0, n, k, 0, &mut visit);
}

fn members(pool: &[Vertex], mask: u64) -> Vec<Vertex> {
    (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect()
}

struct Partitioner<'a> {
    g: &'a SimpleGraph,
    pool: &'a [Vertex],
    quads: HashMap<u64, bool>,
    memo: HashMap<u64, Option<u64>>,
}

impl Partitioner<'_> {
    fn nearly_connected(&mut self, quad: u64) -> bool {
        if let Some(&b) = self.quads.get(&quad) {
            return b;
        }
        let b = connector(self.g, &members(self.pool, quad)).is_some();
        self.quads.insert(quad, b);
        b
    }

    /// First quadruple of a partition of `mask` into nearly connected
    /// 4-sets, memoised; `Some(0)` for the empty mask.
    fn solve(&mut self, mask: u64) -> Option<u64> {
        if mask == 0 {
            return Some(0);
        }
        if let Some(&r) = self.memo.get(&mask) {
            return r;
        }
        let low = mask.trailing_zeros() as usize;
        let rest: Vec<usize> = (low + 1..self.pool.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut found = None;
        'outer: for a in 0..rest.len() {
            for b in a + 1..rest.len() {
                for c in b + 1..rest.len() {
                    let quad = 1 << low | 1 << rest[a] | 1 << rest[b] | 1 << rest[c];
                    if self.nearly_connected(quad) && self.solve(mask & !quad).is_some() {
                        found = Some(quad);
                        break 'outer;
                    }
                }
            }
        }
        self.memo.insert(mask, found);
        found
    }

    fn parts(&mut self, mut mask: u64) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        while mask != 0 {
            let quad = self.solve(mask).expect("mask was solved");
            out.push(members(self.pool, quad));
            mask &= !quad;
        }
        out
    }
}

/// Chooses trees for `tail` and `head` from `pool` and partitions the
/// remaining pool vertices into nearly connected 4-sets.
pub(crate) fn assemble(
    g: &SimpleGraph,
    pool: &[Vertex],
    tail: Option<Target>,
    head: Option<Target>,
) -> Result<Assembly, String> {
    let n = pool.len();
    if n > POOL_LIMIT {
        return Err(format!("local pool of {n} vertices exceeds the solver limit"));
    }
    let k1 = tail.map_or(0, |t| t.set.active_count());
    let k2 = head.map_or(0, |t| t.set.active_count());
    if k1 + k2 > n || !(n - k1 - k2).is_multiple_of(4) {
        return Err(format!("{n} loose vertices cannot host trees of {k1} and {k2} plus whole 4-sets"));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let candidates = |target: Option<Target>| -> Vec<(u64, Option<Vertex>)> {
        let mut out = Vec::new();
        match target {
            None => out.push((0, None)),
            Some(t) => subsets(n, t.set.active_count(), |mask| {
                if let Some(d) = fits(g, t.root, t.set, &members(pool, mask)) {
                    out.push((mask, d));
                }
                false
            }),
        }
        out
    };
    let mut partitioner = Partitioner { g, pool, quads: HashMap::new(), memo: HashMap::new() };
    let tails = candidates(tail);
    let heads = candidates(head);
    for &(t_mask, t_dummy) in &tails {
        for &(h_mask, h_dummy) in &heads {
            if t_mask & h_mask != 0 {
                continue;
            }
            let rest = full & !t_mask & !h_mask;
            if partitioner.solve(rest).is_some() {
                let bind = |t: Option<Target>, mask: u64, dummy: Option<Vertex>| {
                    t.map(|t| BoundTree { root: t.root, set: t.set, actives: members(pool, mask), dummy })
                };
                return Ok(Assembly {
                    tail: bind(tail, t_mask, t_dummy),
                    head: bind(head, h_mask, h_dummy),
                    parts: partitioner.parts(rest),
                });
            }
        }
    }
    Err(format!(
        "no assembly of {n} loose vertices {pool:?} with trees {} at {:?} and {} at {:?}",
        tail.map_or("-".to_string(), |t| t.set.to_string()),
        tail.map(|t| t.root),
        head.map_or("-".to_string(), |t| t.set.to_string()),
        head.map(|t| t.root),
    ))
}

/// Picks `k` pool vertices to serve as subdivision vertices and partitions
/// the rest. Returns the chosen vertices and the parts.
pub(crate) fn assemble_path(
    g: &SimpleGraph,
    pool: &[Vertex],
    k: usize,
) -> Result<(Vec<Vertex>, Vec<Vec<Vertex>>), String> {
    let n = pool.len();
    if n > POOL_LIMIT {
        return Err(format!("local pool of {n} vertices exceeds the solver limit"));
    }
    if k > n || !(n - k).is_multiple_of(4) {
        return Err(format!("{n} loose vertices cannot host {k} subdivision vertices plus whole 4-sets"));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut partitioner = Partitioner { g, pool, quads: HashMap::new(), memo: HashMap::new() };
    let mut found = None;
    subsets(n, k, |mask| {
        if partitioner.solve(full & !mask).is_some() {
            found = Some(mask);
            return true;
        }
        false
    });
    match found {
        Some(mask) => Ok((members(pool, mask), partitioner.parts(full & !mask))),
        None => Err(format!("no choice of {k} subdivision vertices among {pool:?} leaves a partition")),
    }
}
