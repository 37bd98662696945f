//! The reduction engine.
//!
//! Starting from the input graph with every edge labelled `L0`, the engine
//! repeatedly applies one reduction (parallel pair, series vertex,
//! reducible edge, reducible vertex) until a single edge remains. Each
//! reduction wraps the edges it consumes in a gadget that knows how to
//! realize any operation of the new edge by operations on the old ones.
//! The base case picks an operation for the last edge and the realization
//! cascades down through all gadgets, emitting 4-sets along the way.
//!
//! Locally the engine never reasons about tree shapes symbolically: the
//! lift tables decide which operation each child receives, and the loose
//! active vertices are then regrouped by [`solver`] with every check made
//! in the original graph. The final partition is always verified.

pub mod labeled;
pub mod lift;
pub mod ops;
mod solver;

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{SimpleGraph, Vertex};
use crate::labels::{Label, TreeSetId};
use crate::verify::{certify, Part, Partition};

pub use labeled::{LabeledEdge, LabeledMultigraph, ReductionChoice};
pub use lift::Case;
pub use ops::{BoundTree, Op, Realization};

use lift::{classify_parallel, classify_series, lift, ParallelPlan, VertexPlan};
use solver::{assemble, assemble_path, Target};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("order {0} is not divisible by 4")]
    OrderNotDivisibleBy4(usize),
    #[error("graph has {0} vertices, at least 4 are needed")]
    TooSmall(usize),
    #[error("engine bug: {message}")]
    EngineBug { message: String, trace: Vec<String> },
}

/// One reduction step, with the state of the multigraph after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub case: String,
    pub detail: String,
    pub n: usize,
    pub m: usize,
    pub weight: usize,
    pub mod4_ok: bool,
    pub block_ok: bool,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        write!(
            f,
            "step={} case={} {} n={} m={} w={} mod4={} block={}",
            self.step,
            self.case,
            self.detail,
            self.n,
            self.m,
            self.weight,
            ok(self.mod4_ok),
            ok(self.block_ok)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionResult {
    pub parts: Partition,
    pub trace: Vec<TraceStep>,
    /// Places where a lift table had no usable branch and a search over
    /// child operations was needed instead. Empty in normal operation.
    pub fallbacks: Vec<String>,
}

/// A child edge as seen from the case: its label read in case orientation,
/// and whether that is against the gadget's own orientation.
#[derive(Debug, Clone, Copy)]
struct Child {
    gadget: usize,
    label: Label,
    flipped: bool,
}

#[derive(Debug, Clone)]
enum Gadget {
    Original,
    Composite { case: Case, tail: Vertex, head: Vertex, children: Vec<Child>, eliminated: Option<Vertex> },
}

type Realized = Result<Rc<Realization>, String>;

struct Realizer<'g> {
    g: &'g SimpleGraph,
    gadgets: Vec<Gadget>,
    memo: HashMap<(usize, Op), Realized>,
    fallbacks: Vec<String>,
}

fn child_from(e: &LabeledEdge, from: Vertex) -> Child {
    Child { gadget: e.gadget, label: e.label_from(from), flipped: e.tail != from }
}

fn to_parts(raw: Vec<Vec<Vertex>>) -> Vec<Part> {
    raw.into_iter().map(Part::new).collect()
}

impl<'g> Realizer<'g> {
    fn realize(&mut self, gadget: usize, op: Op) -> Realized {
        if let Some(r) = self.memo.get(&(gadget, op)) {
            return r.clone();
        }
        let r = match self.gadgets[gadget].clone() {
            Gadget::Original => match op {
                Op::Split(TreeSetId::S0, TreeSetId::S0) | Op::Subdivide(0) => Ok(Rc::new(Realization {
                    op,
                    tail: BoundTree::empty(0),
                    head: BoundTree::empty(0),
                    path: Vec::new(),
                    parts: Vec::new(),
                    children: Vec::new(),
                })),
                _ => Err(format!("an original edge cannot realize {op}")),
            },
            Gadget::Composite { case, tail, head, children, eliminated } => {
                self.composite(gadget, case, (tail, head), &children, eliminated, op)
            }
        };
        self.memo.insert((gadget, op), r.clone());
        r
    }

    /// Realizes a child with an operation given in case orientation.
    fn realize_child(&mut self, child: Child, op: Op) -> Realized {
        if child.flipped {
            let r = self.realize(child.gadget, op.reversed())?;
            Ok(Rc::new((*r).clone().flipped()))
        } else {
            self.realize(child.gadget, op)
        }
    }

    fn composite(
        &mut self,
        gadget: usize,
        case: Case,
        ends: (Vertex, Vertex),
        children: &[Child],
        eliminated: Option<Vertex>,
        op: Op,
    ) -> Realized {
        let labels: Vec<Label> = children.iter().map(|c| c.label).collect();
        let table = lift(case, &labels, op).and_then(|requested| {
            let ops = children
                .iter()
                .zip(&requested)
                .map(|(c, o)| o.resolve(c.label).ok_or_else(|| format!("case {case}: {o} not allowed on {}", c.label)))
                .collect::<Result<Vec<Op>, String>>()?;
            self.combine(ends, children, eliminated, op, &ops, true)
        });
        let reason = match table {
            Ok(r) => return Ok(r),
            Err(e) => e,
        };
        let options: Vec<Vec<Op>> = children.iter().map(|c| Op::allowed(c.label)).collect();
        let mut choice = vec![0; children.len()];
        loop {
            let ops: Vec<Op> = choice.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            if let Ok(r) = self.combine(ends, children, eliminated, op, &ops, false) {
                self.fallbacks.push(format!("gadget {gadget} case {case} {op}: {reason}"));
                return Ok(r);
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return Err(format!("gadget {gadget} case {case} cannot realize {op}: {reason}"));
                }
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Realizes the children with `ops` and regroups their loose vertices.
    /// With `table` a subdivision keeps the children's paths in order;
    /// otherwise any loose vertices may serve as the path.
    fn combine(
        &mut self,
        (tail, head): (Vertex, Vertex),
        children: &[Child],
        eliminated: Option<Vertex>,
        op: Op,
        ops: &[Op],
        table: bool,
    ) -> Realized {
        let mut reals = Vec::with_capacity(children.len());
        for (&c, &o) in children.iter().zip(ops) {
            reals.push(self.realize_child(c, o)?);
        }
        let mut pool: Vec<Vertex> = reals.iter().flat_map(|r| r.open_vertices()).collect();
        pool.extend(eliminated);
        let mut sorted = pool.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("a vertex is bound twice in {pool:?}"));
        }
        let linked: Vec<(usize, Op)> =
            children.iter().zip(ops).map(|(c, &o)| (c.gadget, if c.flipped { o.reversed() } else { o })).collect();
        let (tail_tree, head_tree, path, parts) = match op {
            Op::Subdivide(k) if table => {
                let mut path: Vec<Vertex> = reals[0].path.clone();
                path.extend(eliminated);
                for r in &reals[1..] {
                    path.extend(&r.path);
                }
                if path.len() != k as usize {
                    return Err(format!("subdivision needs {k} path vertices, found {path:?}"));
                }
                let rest: Vec<Vertex> = pool.iter().copied().filter(|v| !path.contains(v)).collect();
                let a = assemble(self.g, &rest, None, None)?;
                (BoundTree::empty(tail), BoundTree::empty(head), path, a.parts)
            }
            Op::Subdivide(k) => {
                let (path, parts) = assemble_path(self.g, &pool, k as usize)?;
                (BoundTree::empty(tail), BoundTree::empty(head), path, parts)
            }
            Op::Split(p, q) => {
                let a =
                    assemble(self.g, &pool, Some(Target { root: tail, set: p }), Some(Target { root: head, set: q }))?;
                (a.tail.unwrap(), a.head.unwrap(), Vec::new(), a.parts)
            }
        };
        Ok(Rc::new(Realization {
            op,
            tail: tail_tree,
            head: head_tree,
            path,
            parts: to_parts(parts),
            children: linked,
        }))
    }

    /// Every part finalized by a realization and its descendants.
    fn collect(&self, root: &Realization, out: &mut Vec<Part>) {
        out.extend(root.parts.iter().cloned());
        let mut stack: Vec<(usize, Op)> = root.children.clone();
        while let Some(key) = stack.pop() {
            if let Some(Ok(r)) = self.memo.get(&key) {
                out.extend(r.parts.iter().cloned());
                stack.extend(r.children.iter().copied());
            }
        }
    }
}

struct Engine<'g> {
    lg: LabeledMultigraph,
    realizer: Realizer<'g>,
    parts: Vec<Part>,
    trace: Vec<TraceStep>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g SimpleGraph) -> Self {
        let mut lg = LabeledMultigraph::new(g.n());
        let mut gadgets = Vec::new();
        for (u, v) in g.edges() {
            lg.add_edge(u, v, Label::L0, gadgets.len());
            gadgets.push(Gadget::Original);
        }
        Engine {
            lg,
            realizer: Realizer { g, gadgets, memo: HashMap::new(), fallbacks: Vec::new() },
            parts: Vec::new(),
            trace: Vec::new(),
        }
    }

    fn bug(&self, message: String) -> EngineError {
        EngineError::EngineBug { message, trace: self.trace.iter().map(ToString::to_string).collect() }
    }

    fn new_edge(&mut self, tail: Vertex, head: Vertex, label: Label, gadget: Gadget) -> usize {
        let id = self.realizer.gadgets.len();
        self.realizer.gadgets.push(gadget);
        self.lg.add_edge(tail, head, label, id)
    }

    /// Realizes children with fixed operations and partitions everything
    /// loose, plus `extra`, into finished parts.
    fn finalize(&mut self, children: &[(Child, Op)], extra: &[Vertex]) -> Result<(), String> {
        let mut pool: Vec<Vertex> = extra.to_vec();
        let mut reals = Vec::new();
        for &(c, op) in children {
            let actual = op.resolve(c.label).ok_or_else(|| format!("{op} not allowed on {}", c.label))?;
            let r = self.realizer.realize_child(c, actual)?;
            pool.extend(r.open_vertices());
            reals.push(r);
        }
        let a = assemble(self.realizer.g, &pool, None, None)?;
        for r in reals {
            self.realizer.collect(&r, &mut self.parts);
        }
        self.parts.extend(to_parts(a.parts));
        Ok(())
    }

    fn run(mut self) -> Result<PartitionResult, EngineError> {
        loop {
            let before = self.lg.edge_count();
            let choice = self.lg.find_reduction().map_err(|e| self.bug(e))?;
            let (case, detail) = match choice {
                ReductionChoice::Base(id) => {
                    self.base(id).map_err(|e| self.bug(e))?;
                    break;
                }
                ReductionChoice::Parallel(a, b) => self.parallel(a, b),
                ReductionChoice::Series(v) => self.series(v),
                ReductionChoice::ReducibleEdge { e1, e2, v } => self.reducible_edge(e1, e2, v),
                ReductionChoice::ReducibleVertex(v) => self.reducible_vertex(v),
            }
            .map_err(|e| self.bug(e))?;
            let step = TraceStep {
                step: self.trace.len(),
                case,
                detail,
                n: self.lg.vertex_count(),
                m: self.lg.edge_count(),
                weight: self.lg.weight(),
                mod4_ok: self.lg.mod4_ok(),
                block_ok: self.lg.is_block(),
            };
            let ok = step.mod4_ok && step.block_ok && step.m < before;
            self.trace.push(step);
            if !ok {
                return Err(self.bug("invariant violated after a reduction".into()));
            }
        }
        let g = self.realizer.g;
        let mut parts = std::mem::take(&mut self.parts);
        parts.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        certify(g, &mut parts, None).map_err(|e| self.bug(format!("verification failed: {e}")))?;
        Ok(PartitionResult { parts, trace: self.trace, fallbacks: self.realizer.fallbacks })
    }

    fn base(&mut self, id: usize) -> Result<(), String> {
        let e = self.lg.edge(id);
        let preferred = match e.label {
            Label::L2 => Some(Op::Subdivide(2)),
            l => Op::Split(TreeSetId::S3, TreeSetId::S3p).resolve(l),
        };
        let mut ops: Vec<Op> = preferred.into_iter().collect();
        ops.extend(Op::allowed(e.label).into_iter().filter(|&o| Some(o) != preferred));
        let mut last = format!("base edge {} has weight {}", e.label, e.label.weight());
        for (i, op) in ops.into_iter().enumerate() {
            let child = Child { gadget: e.gadget, label: e.label, flipped: false };
            match self.finalize(&[(child, op)], &[e.tail, e.head]) {
                Ok(()) => {
                    if i > 0 {
                        self.realizer.fallbacks.push(format!("base edge {}: {last}", e.label));
                    }
                    self.trace.push(TraceStep {
                        step: self.trace.len(),
                        case: "base".into(),
                        detail: format!("e=#{id}:{} op={op}", e.label),
                        n: 2,
                        m: 1,
                        weight: e.label.weight(),
                        mod4_ok: self.lg.mod4_ok(),
                        block_ok: self.lg.is_block(),
                    });
                    return Ok(());
                }
                Err(err) => last = err,
            }
        }
        Err(format!("base edge {} has no realizable operation: {last}", e.label))
    }

    fn parallel(&mut self, a: usize, b: usize) -> Result<(String, String), String> {
        let (ea, eb) = (self.lg.edge(a), self.lg.edge(b));
        let (u, v) = (ea.tail, ea.head);
        let (plan, swap) = classify_parallel(ea.label_from(u), eb.label_from(u));
        let (e1, e2) = if swap { (eb, ea) } else { (ea, eb) };
        match plan {
            ParallelPlan::Strip => {
                self.finalize(&[(child_from(&e1, u), Op::Split(TreeSetId::S0, TreeSetId::S0))], &[])?;
                self.lg.remove_edge(e1.id);
                Ok(("1".into(), format!("strip=#{}", e1.id)))
            }
            ParallelPlan::Merge { case, label } => {
                let children = vec![child_from(&e1, u), child_from(&e2, u)];
                self.lg.remove_edge(a);
                self.lg.remove_edge(b);
                let gadget = Gadget::Composite { case, tail: u, head: v, children, eliminated: None };
                let id = self.new_edge(u, v, label, gadget);
                Ok((case.id().into(), format!("e1=#{} e2=#{} new=#{id}:{label}", e1.id, e2.id)))
            }
        }
    }

    fn series(&mut self, v: Vertex) -> Result<(String, String), String> {
        let ids = self.lg.incident(v);
        let (a, b) = (self.lg.edge(ids[0]), self.lg.edge(ids[1]));
        let (va, vb) = (a.other(v), b.other(v));
        let (case, label, swap) = classify_series(a.label_from(va), b.label_from(v));
        let (e1, v1, e2, v2) = if swap { (b, vb, a, va) } else { (a, va, b, vb) };
        let children = vec![child_from(&e1, v1), child_from(&e2, v)];
        self.lg.remove_edge(a.id);
        self.lg.remove_edge(b.id);
        self.lg.remove_vertex(v);
        let gadget = Gadget::Composite { case, tail: v1, head: v2, children, eliminated: Some(v) };
        let id = self.new_edge(v1, v2, label, gadget);
        Ok((case.id().into(), format!("v={v} e1=#{} e2=#{} new=#{id}:{label}", e1.id, e2.id)))
    }

    fn reducible_edge(&mut self, e1: usize, e2: usize, v: Vertex) -> Result<(String, String), String> {
        let (a, b) = (self.lg.edge(e1), self.lg.edge(e2));
        let v2 = b.other(v);
        let children = vec![child_from(&a, v), child_from(&b, v)];
        self.lg.remove_edge(e1);
        self.lg.remove_edge(e2);
        let gadget = Gadget::Composite { case: Case::Edge3, tail: v, head: v2, children, eliminated: None };
        let id = self.new_edge(v, v2, Label::L20, gadget);
        Ok(("3".into(), format!("v={v} e1=#{e1} e2=#{e2} new=#{id}:L20")))
    }

    fn reducible_vertex(&mut self, v: Vertex) -> Result<(String, String), String> {
        let ids = self.lg.incident(v);
        if let Some(&z) = ids.iter().find(|&&id| self.lg.edge(id).label.weight() == 0) {
            let e = self.lg.edge(z);
            self.finalize(&[(child_from(&e, v), Op::Split(TreeSetId::S0, TreeSetId::S0))], &[])?;
            self.lg.remove_edge(z);
            return Ok(("4".into(), format!("v={v} strip=#{z}")));
        }
        let (ids, plan) = self.lg.vertex_plan(v)?;
        let edges: Vec<LabeledEdge> = ids.iter().map(|&id| self.lg.edge(id)).collect();
        let names = |list: &[usize]| list.iter().map(|&i| format!("#{}", ids[i])).collect::<Vec<_>>().join(",");
        match plan {
            VertexPlan::Immediate { case, edges: fixed, eliminate } => {
                let children: Vec<(Child, Op)> = fixed.iter().map(|&(i, op)| (child_from(&edges[i], v), op)).collect();
                let extra: Vec<Vertex> = if eliminate { vec![v] } else { Vec::new() };
                self.finalize(&children, &extra)?;
                let used: Vec<usize> = fixed.iter().map(|&(i, _)| i).collect();
                for &i in &used {
                    self.lg.remove_edge(ids[i]);
                }
                if eliminate {
                    if self.lg.degree(v) != 0 {
                        return Err(format!("case {case}: vertex {v} still has edges"));
                    }
                    self.lg.remove_vertex(v);
                }
                Ok((case.id().into(), format!("v={v} edges={}", names(&used))))
            }
            VertexPlan::Construct { case, order, ends, label, eliminate } => {
                let children: Vec<Child> = order.iter().map(|&i| child_from(&edges[i], v)).collect();
                let (t, h) = (edges[order[ends.0]].other(v), edges[order[ends.1]].other(v));
                for &i in &order {
                    self.lg.remove_edge(ids[i]);
                }
                if eliminate {
                    if self.lg.degree(v) != 0 {
                        return Err(format!("case {case}: vertex {v} still has edges"));
                    }
                    self.lg.remove_vertex(v);
                }
                let gadget = Gadget::Composite { case, tail: t, head: h, children, eliminated: eliminate.then_some(v) };
                let id = self.new_edge(t, h, label, gadget);
                Ok((case.id().into(), format!("v={v} edges={} new=#{id}:{label}", names(&order))))
            }
        }
    }
}

/// Stack size for the engine thread; realization recurses once per nested
/// gadget.
const ENGINE_STACK: usize = 1 << 30;

fn check_input(g: &SimpleGraph) -> Result<(), EngineError> {
    if g.n() < 4 {
        return Err(EngineError::TooSmall(g.n()));
    }
    if !g.is_biconnected() {
        return Err(EngineError::NotBiconnected);
    }
    if !g.n().is_multiple_of(4) {
        return Err(EngineError::OrderNotDivisibleBy4(g.n()));
    }
    Ok(())
}

/// Partitions a 2-connected graph whose order is divisible by 4 into
/// nearly connected 4-sets, with the reduction trace and fallback log.
/// The result has been verified against `g`.
pub fn partition_2connected_traced(g: &SimpleGraph) -> Result<PartitionResult, EngineError> {
    check_input(g)?;
    let owned = g.clone();
    std::thread::Builder::new()
        .name("ncpart-engine".into())
        .stack_size(ENGINE_STACK)
        .spawn(move || Engine::new(&owned).run())
        .map_err(|e| EngineError::EngineBug { message: format!("cannot start engine thread: {e}"), trace: Vec::new() })?
        .join()
        .unwrap_or_else(|_| Err(EngineError::EngineBug { message: "engine thread panicked".into(), trace: Vec::new() }))
}

/// Partitions a 2-connected graph whose order is divisible by 4 into
/// nearly connected 4-sets. Deterministic; the result is verified.
pub fn partition_2connected(g: &SimpleGraph) -> Result<Partition, EngineError> {
    partition_2connected_traced(g).map(|r| r.parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &SimpleGraph) -> PartitionResult {
        let r = partition_2connected_traced(g).unwrap();
        assert!(r.fallbacks.is_empty(), "{:?}", r.fallbacks);
        r
    }

    #[test]
    fn small_graphs() {
        for g in [SimpleGraph::cycle(4), SimpleGraph::complete(4), SimpleGraph::cycle(8), SimpleGraph::complete(8)] {
            let r = run(&g);
            assert_eq!(r.parts.len(), g.n() / 4);
        }
        assert_eq!(run(&SimpleGraph::cycle(4)).parts[0].vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(partition_2connected(&SimpleGraph::path(4)), Err(EngineError::NotBiconnected));
        assert_eq!(partition_2connected(&SimpleGraph::cycle(5)), Err(EngineError::OrderNotDivisibleBy4(5)));
        assert_eq!(partition_2connected(&SimpleGraph::cycle(3)), Err(EngineError::TooSmall(3)));
    }

    #[test]
    fn k4_starts_at_vertex_zero() {
        let r = run(&SimpleGraph::complete(4));
        assert!(r.trace[0].detail.starts_with("v=0 "), "{}", r.trace[0]);
    }
}
