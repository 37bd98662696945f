//! Edge operations and their realizations over original vertices.

use std::fmt;

use serde::Serialize;

use crate::graph::Vertex;
use crate::labels::{Label, TreeSetId};
use crate::verify::Part;

/// An operation on a labelled edge: subdivide it `k` times, or apply a
/// `(P, Q)` split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Op {
    Subdivide(u8),
    Split(TreeSetId, TreeSetId),
}

impl Op {
    /// The same operation read against the opposite orientation.
    pub fn reversed(self) -> Op {
        match self {
            Op::Split(p, q) => Op::Split(q, p),
            s => s,
        }
    }

    /// Every operation an edge with label `l` allows, literal pairs first.
    pub fn allowed(l: Label) -> Vec<Op> {
        let mut ops: Vec<Op> = l.pairs().iter().map(|&(p, q)| Op::Split(p, q)).collect();
        if let Some(k) = l.subdivisions() {
            ops.push(Op::Subdivide(k as u8));
        }
        ops
    }

    /// Resolves a requested operation to the one actually applied on an edge
    /// labelled `l`, or `None` if the label does not allow it.
    pub fn resolve(self, l: Label) -> Option<Op> {
        match self {
            Op::Subdivide(k) => (l.subdivisions() == Some(k as usize)).then_some(self),
            Op::Split(p, q) => l.admits(p, q).map(|(p1, q1)| Op::Split(p1, q1)),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Subdivide(k) => write!(f, "Sub({k})"),
            Op::Split(p, q) => write!(f, "({p},{q})"),
        }
    }
}

/// A tree attached at `root`: its active vertices and, for `S_i^+`, the
/// vertex used as dummy (if one was needed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTree {
    pub root: Vertex,
    pub set: TreeSetId,
    pub actives: Vec<Vertex>,
    pub dummy: Option<Vertex>,
}

impl BoundTree {
    pub fn empty(root: Vertex) -> Self {
        BoundTree { root, set: TreeSetId::S0, actives: Vec::new(), dummy: None }
    }
}

/// The outcome of applying an operation to an edge gadget: trees at both
/// ends, the subdivision path (tail to head) and the parts finalized at
/// this level. Parts finalized deeper down are reached through `children`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub op: Op,
    pub tail: BoundTree,
    pub head: BoundTree,
    pub path: Vec<Vertex>,
    pub parts: Vec<Part>,
    /// Child gadgets and the operations they were realized with, in their
    /// own orientation.
    #[serde(skip)]
    pub children: Vec<(usize, Op)>,
}

impl Realization {
    pub fn flipped(self) -> Realization {
        let mut path = self.path;
        path.reverse();
        Realization { op: self.op.reversed(), tail: self.head, head: self.tail, path, ..self }
    }

    /// Active vertices handed to the enclosing level: tree actives and path.
    pub fn open_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.tail.actives.iter().chain(&self.head.actives).chain(&self.path).copied()
    }
}
