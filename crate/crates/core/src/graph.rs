//! Undirected simple graphs and multigraphs with the connectivity queries
//! used throughout the crate.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is not 2-connected")]
    NotBiconnected,
}

/// A 2-cut and one component of the graph minus that cut.
pub type CutComponent = ((Vertex, Vertex), Vec<Vertex>);

/// Undirected simple graph on the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![BTreeSet::new(); n] }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j {
                g.adj[i].insert(j);
                g.adj[j].insert(i);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for i in 1..n {
            g.adj[i - 1].insert(i);
            g.adj[i].insert(i - 1);
        }
        g
    }

    /// Adds an edge; returns `Ok(false)` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Whether the subgraph induced by `set` is connected. The empty set
    /// counts as connected.
    pub fn induces_connected(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else {
            return true;
        };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in set {
                if !seen.contains(&w) && self.adj[u].contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Vertices of each connected component of `self - removed`, each
    /// sorted, components ordered by their smallest vertex.
    pub fn components_without(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || removed.contains(&s) {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX && !removed.contains(&w) {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True iff the graph is connected, has at least two vertices and has
    /// no cutvertex.
    pub fn is_biconnected(&self) -> bool {
        let vertices: Vec<Vertex> = (0..self.n()).collect();
        is_block(&vertices, &self.edges())
    }

    /// Brute-force 3-connectivity: no pair of vertices disconnects the graph.
    pub fn is_triconnected(&self) -> bool {
        self.n() >= 4 && self.is_biconnected() && self.smallest_2cut_component().ok().flatten().is_none()
    }

    /// Among all 2-cuts `{u, v}`, one minimising the order of the smallest
    /// component of `G - {u, v}`, together with that component. `None`
    /// when the graph is 3-connected or has fewer than four vertices.
    pub fn smallest_2cut_component(&self) -> Result<Option<CutComponent>, GraphError> {
        if !self.is_biconnected() {
            return Err(GraphError::NotBiconnected);
        }
        let n = self.n();
        if n < 4 {
            return Ok(None);
        }
        let mut best: Option<CutComponent> = None;
        for u in 0..n {
            for v in u + 1..n {
                let comps = self.components_without(&[u, v]);
                if comps.len() < 2 {
                    continue;
                }
                let smallest = comps.into_iter().min_by_key(Vec::len).unwrap();
                if best.as_ref().is_none_or(|(_, c)| smallest.len() < c.len()) {
                    best = Some(((u, v), smallest));
                }
            }
        }
        Ok(best)
    }

    /// The `k`th power: same vertices, `u ~ v` iff `1 <= dist(u, v) <= k`.
    pub fn power(&self, k: usize) -> SimpleGraph {
        let n = self.n();
        let mut out = SimpleGraph::new(n);
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if dist[u] == k {
                    continue;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (t, &d) in dist.iter().enumerate() {
                if t != s && d != usize::MAX {
                    out.adj[s].insert(t);
                }
            }
        }
        out
    }

    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Free-standing alias for [`SimpleGraph::power`].
pub fn graph_power(g: &SimpleGraph, k: usize) -> SimpleGraph {
    g.power(k)
}

/// Block test on an arbitrary vertex subset and (multi)edge list: connected,
/// at least two vertices, no cutvertex. Parallel edges are allowed; loops
/// are ignored.
pub fn is_block(vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> bool {
    let n = vertices.len();
    if n < 2 {
        return false;
    }
    let max = vertices.iter().copied().max().unwrap();
    let mut index = vec![usize::MAX; max + 1];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        let (a, b) = (index[u], index[v]);
        adj[a].push(b);
        adj[b].push(a);
    }
    // Iterative lowpoint DFS from vertex 0.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut parent = vec![usize::MAX; n];
    let mut root_children = 0;
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if *next < adj[u].len() {
            let w = adj[u][*next];
            *next += 1;
            if disc[w] == usize::MAX {
                parent[w] = u;
                disc[w] = time;
                low[w] = time;
                time += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, 0));
            } else if w != parent[u] {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != 0 && low[u] >= disc[p] {
                    return false;
                }
            }
        }
    }
    if disc.contains(&usize::MAX) {
        return false;
    }
    root_children <= 1 || n == 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiEdge {
    pub id: usize,
    pub u: Vertex,
    pub v: Vertex,
}

/// Undirected multigraph with stable edge ids. Vertices can be deleted;
/// the remaining ones keep their original indices.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    alive: Vec<bool>,
    edges: Vec<Option<MultiEdge>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { alive: vec![true; n], edges: Vec::new() }
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        let mut m = Multigraph::new(g.n());
        for (u, v) in g.edges() {
            m.add_edge(u, v);
        }
        m
    }

    /// Adds an edge and returns its id.
    ///
    /// # Panics
    /// On loops or dead endpoints.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> usize {
        assert!(u != v, "multigraph loops are not allowed");
        assert!(self.alive[u] && self.alive[v], "edge endpoint was deleted");
        let id = self.edges.len();
        self.edges.push(Some(MultiEdge { id, u, v }));
        id
    }

    pub fn remove_edge(&mut self, id: usize) -> Option<MultiEdge> {
        self.edges.get_mut(id).and_then(Option::take)
    }

    /// Deletes a vertex, which must have no incident edges left.
    pub fn remove_vertex(&mut self, v: Vertex) {
        debug_assert!(self.incident(v).is_empty());
        self.alive[v] = false;
    }

    pub fn edge(&self, id: usize) -> Option<MultiEdge> {
        self.edges.get(id).copied().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = MultiEdge> + '_ {
        self.edges.iter().flatten().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    /// Incident edge ids of `v` in increasing order.
    pub fn incident(&self, v: Vertex) -> Vec<usize> {
        self.edges().filter(|e| e.u == v || e.v == v).map(|e| e.id).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn is_biconnected(&self) -> bool {
        let edges: Vec<_> = self.edges().map(|e| (e.u, e.v)).collect();
        is_block(&self.vertices(), &edges)
    }

    /// Block test after hypothetically deleting one edge.
    pub fn is_biconnected_without_edge(&self, id: usize) -> bool {
        let edges: Vec<_> = self.edges().filter(|e| e.id != id).map(|e| (e.u, e.v)).collect();
        is_block(&self.vertices(), &edges)
    }

    /// Block test after hypothetically deleting one vertex.
    pub fn is_biconnected_without_vertex(&self, x: Vertex) -> bool {
        let vertices: Vec<_> = self.vertices().into_iter().filter(|&v| v != x).collect();
        let edges: Vec<_> = self.edges().filter(|e| e.u != x && e.v != x).map(|e| (e.u, e.v)).collect();
        is_block(&vertices, &edges)
    }

    /// The underlying simple graph on the live vertices, compacted to
    /// `0..k`, with the map from compact index back to the vertex.
    pub fn underlying_simple(&self) -> (SimpleGraph, Vec<Vertex>) {
        let vertices = self.vertices();
        let mut index = vec![usize::MAX; self.alive.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::new(vertices.len());
        for e in self.edges() {
            let _ = g.add_edge(index[e.u], index[e.v]);
        }
        (g, vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_biconnected(g: &SimpleGraph) -> bool {
        g.n() >= 2 && g.is_connected() && (g.n() == 2 || (0..g.n()).all(|v| g.components_without(&[v]).len() == 1))
    }

    #[test]
    fn biconnectivity_basics() {
        assert!(SimpleGraph::cycle(4).is_biconnected());
        assert!(!SimpleGraph::path(3).is_biconnected());
        let mut diamond = SimpleGraph::complete(4);
        diamond.remove_edge(0, 1);
        assert!(diamond.is_biconnected());
        assert!(!SimpleGraph::new(1).is_biconnected());
    }

    #[test]
    fn biconnectivity_matches_brute_force_up_to_six() {
        for n in 2..=6usize {
            let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = SimpleGraph::from_edges(n, &edges).unwrap();
                assert_eq!(g.is_biconnected(), brute_biconnected(&g), "{edges:?}");
            }
        }
    }

    #[test]
    fn multigraph_two_vertices_is_block() {
        let mut m = Multigraph::new(2);
        m.add_edge(0, 1);
        assert!(m.is_biconnected());
        m.add_edge(1, 0);
        assert!(m.is_biconnected());
        assert!(m.is_biconnected_without_edge(0));
    }

    #[test]
    fn smallest_cut_examples() {
        let c4 = SimpleGraph::cycle(4);
        let ((u, v), comp) = c4.smallest_2cut_component().unwrap().unwrap();
        assert_eq!((u, v), (0, 2));
        assert_eq!(comp, vec![1]);
        assert_eq!(SimpleGraph::complete(4).smallest_2cut_component().unwrap(), None);
        assert_eq!(SimpleGraph::path(4).smallest_2cut_component(), Err(GraphError::NotBiconnected));
        // theta: three paths of length two between 0 and 1
        let theta = SimpleGraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let (_, comp) = theta.smallest_2cut_component().unwrap().unwrap();
        assert_eq!(comp.len(), 1);
    }

    #[test]
    fn power_examples() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.power(1), c5);
        assert_eq!(c5.power(2), SimpleGraph::complete(5));
        let p4 = SimpleGraph::path(4).power(2);
        assert_eq!(p4.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(SimpleGraph::from_edges(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(SimpleGraph::from_edges(3, &[(0, 3)]), Err(GraphError::OutOfRange { vertex: 3, n: 3 }));
        assert_eq!(SimpleGraph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
    }
}
