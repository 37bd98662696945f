//! The labelled multigraph the engine reduces, and the choice of the next
//! reduction.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::graph::{Multigraph, SimpleGraph, Vertex};
use crate::labels::Label;

use super::lift::{classify_vertex, VertexPlan};

/// An edge stored from `tail` to `head`; read the other way its label is
/// the involution of `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabeledEdge {
    pub id: usize,
    pub tail: Vertex,
    pub head: Vertex,
    pub label: Label,
    pub gadget: usize,
}

impl LabeledEdge {
    pub fn other(&self, v: Vertex) -> Vertex {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }

    /// The label read from `from` towards the other end.
    pub fn label_from(&self, from: Vertex) -> Label {
        if from == self.tail {
            self.label
        } else {
            self.label.involution()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionChoice {
    Base(usize),
    Parallel(usize, usize),
    Series(Vertex),
    ReducibleEdge { e1: usize, e2: usize, v: Vertex },
    ReducibleVertex(Vertex),
}

#[derive(Debug, Clone)]
pub struct LabeledMultigraph {
    graph: Multigraph,
    edges: Vec<Option<LabeledEdge>>,
    incident: Vec<BTreeSet<usize>>,
}

/// Largest order for which the smallest 2-cut component is located before
/// scanning.
const CUT_SCAN_LIMIT: usize = 64;

impl LabeledMultigraph {
    pub fn new(n: usize) -> Self {
        LabeledMultigraph { graph: Multigraph::new(n), edges: Vec::new(), incident: vec![BTreeSet::new(); n] }
    }

    pub fn add_edge(&mut self, tail: Vertex, head: Vertex, label: Label, gadget: usize) -> usize {
        let id = self.graph.add_edge(tail, head);
        debug_assert_eq!(id, self.edges.len());
        self.edges.push(Some(LabeledEdge { id, tail, head, label, gadget }));
        self.incident[tail].insert(id);
        self.incident[head].insert(id);
        id
    }

    pub fn remove_edge(&mut self, id: usize) -> LabeledEdge {
        let e = self.edges[id].take().expect("edge is live");
        self.graph.remove_edge(id);
        self.incident[e.tail].remove(&id);
        self.incident[e.head].remove(&id);
        e
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        self.graph.remove_vertex(v);
    }

    pub fn edge(&self, id: usize) -> LabeledEdge {
        self.edges[id].expect("edge is live")
    }

    pub fn edges(&self) -> impl Iterator<Item = LabeledEdge> + '_ {
        self.edges.iter().flatten().copied()
    }

    /// Incident edge ids in increasing order.
    pub fn incident(&self, v: Vertex) -> Vec<usize> {
        self.incident[v].iter().copied().collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident[v].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.incident.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn weight(&self) -> usize {
        self.edges().map(|e| e.label.weight()).sum()
    }

    pub fn mod4_ok(&self) -> bool {
        (self.weight() + self.vertex_count()).is_multiple_of(4)
    }

    pub fn is_block(&self) -> bool {
        self.graph.is_biconnected()
    }

    fn parallel_pair(&self) -> Option<(usize, usize)> {
        let mut first: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for e in self.edges() {
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if let Some(&a) = first.get(&key) {
                return Some((a, e.id));
            }
            first.insert(key, e.id);
        }
        None
    }

    /// Vertices in the order the reducible-edge and reducible-vertex scans
    /// visit them: the smallest component of a 2-cut first, then the cut,
    /// then everything else. Plain id order for large or 3-connected
    /// graphs.
    fn scan_order(&self) -> Vec<Vertex> {
        let all = self.graph.vertices();
        if all.len() > CUT_SCAN_LIMIT {
            return all;
        }
        let (simple, names): (SimpleGraph, Vec<Vertex>) = self.graph.underlying_simple();
        if simple.is_triconnected() {
            return all;
        }
        let Ok(Some(((a, b), component))) = simple.smallest_2cut_component() else {
            return all;
        };
        let mut order: Vec<Vertex> = component.iter().map(|&i| names[i]).collect();
        order.sort_unstable();
        let mut cut = vec![names[a], names[b]];
        cut.sort_unstable();
        order.extend(cut);
        let seen: BTreeSet<Vertex> = order.iter().copied().collect();
        order.extend(all.into_iter().filter(|v| !seen.contains(v)));
        order
    }

    fn labels_from(&self, v: Vertex) -> Vec<Label> {
        self.incident[v].iter().map(|&id| self.edge(id).label_from(v)).collect()
    }

    fn vertex_reducible(&self, v: Vertex) -> bool {
        self.degree(v) >= 3
            && self.labels_from(v).iter().filter(|&&l| l == Label::L31).count() <= 1
            && self.graph.is_biconnected_without_vertex(v)
    }

    pub fn find_reduction(&self) -> Result<ReductionChoice, String> {
        let m = self.edge_count();
        if m == 1 {
            return Ok(ReductionChoice::Base(self.edges().next().unwrap().id));
        }
        if let Some((a, b)) = self.parallel_pair() {
            return Ok(ReductionChoice::Parallel(a, b));
        }
        if let Some(v) = self.graph.vertices().into_iter().find(|&v| self.degree(v) == 2) {
            return Ok(ReductionChoice::Series(v));
        }
        let order = self.scan_order();
        for &v in &order {
            if self.labels_from(v).iter().any(|l| l.weight() == 0) && self.vertex_reducible(v) {
                return Ok(ReductionChoice::ReducibleVertex(v));
            }
        }
        for &v in &order {
            for e1 in self.incident(v) {
                if self.edge(e1).label_from(v) != Label::L32 || !self.graph.is_biconnected_without_edge(e1) {
                    continue;
                }
                let e2 = self
                    .incident(v)
                    .into_iter()
                    .find(|&e2| e2 != e1 && matches!(self.edge(e2).label_from(v), Label::L30 | Label::L32));
                if let Some(e2) = e2 {
                    return Ok(ReductionChoice::ReducibleEdge { e1, e2, v });
                }
            }
        }
        for &v in &order {
            if self.vertex_reducible(v) && classify_vertex(&self.labels_from(v)).is_ok() {
                return Ok(ReductionChoice::ReducibleVertex(v));
            }
        }
        Err(format!("no reduction applies ({} vertices, {m} edges)", self.vertex_count()))
    }

    /// The plan `find_reduction` vetted for a reducible vertex without
    /// weight-0 edges.
    pub fn vertex_plan(&self, v: Vertex) -> Result<(Vec<usize>, VertexPlan), String> {
        let ids = self.incident(v);
        classify_vertex(&self.labels_from(v)).map(|plan| (ids, plan))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_l0(g: &SimpleGraph) -> LabeledMultigraph {
        let mut lg = LabeledMultigraph::new(g.n());
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            lg.add_edge(u, v, Label::L0, i);
        }
        lg
    }

    #[test]
    fn choices_follow_priority() {
        let mut lg = LabeledMultigraph::new(2);
        lg.add_edge(0, 1, Label::L1, 0);
        lg.add_edge(0, 1, Label::L1, 1);
        assert_eq!(lg.find_reduction().unwrap(), ReductionChoice::Parallel(0, 1));
        assert_eq!(all_l0(&SimpleGraph::cycle(4)).find_reduction().unwrap(), ReductionChoice::Series(0));
        let k4 = all_l0(&SimpleGraph::complete(4));
        assert_eq!(k4.find_reduction().unwrap(), ReductionChoice::ReducibleVertex(0));
        assert!(k4.mod4_ok() && k4.is_block());
    }

    #[test]
    fn reading_against_orientation_uses_involution() {
        let mut lg = LabeledMultigraph::new(3);
        let id = lg.add_edge(0, 1, Label::L31, 0);
        assert_eq!(lg.edge(id).label_from(0), Label::L31);
        assert_eq!(lg.edge(id).label_from(1), Label::L32);
        lg.remove_edge(id);
        assert_eq!(lg.edge_count(), 0);
    }
}
