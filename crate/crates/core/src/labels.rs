//! Rooted-tree sets, edge labels and their algebra.
//!
//! A label on an oriented edge `u -> v` is a set of pairs `(P, Q)` of
//! rooted-tree sets: a `(P, Q)` split deletes the edge and hangs a tree from
//! `P` at `u` and one from `Q` at `v`. Reading the edge the other way round
//! uses the involution of the label.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Sets of small rooted trees. Declaration order is the catalog order used
/// for deterministic tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TreeSetId {
    S0,
    S1,
    S2,
    S3,
    S1p,
    S2p,
    S3p,
    S2m,
    S3m,
    S5m,
}

use TreeSetId::*;

impl TreeSetId {
    pub const ALL: [TreeSetId; 10] = [S0, S1, S2, S3, S1p, S2p, S3p, S2m, S3m, S5m];

    /// `S_i` for `i <= 3`.
    pub fn plain(i: usize) -> Option<TreeSetId> {
        [S0, S1, S2, S3].get(i).copied()
    }

    /// `S_i^+` for `1 <= i <= 3`. `S_0^+` is read as `S_0`: a lone dummy
    /// leaf contributes nothing.
    pub fn plus(i: usize) -> Option<TreeSetId> {
        [S0, S1p, S2p, S3p].get(i).copied()
    }

    /// Number of attached vertices that stay active.
    pub fn active_count(self) -> usize {
        match self {
            S0 => 0,
            S1 | S1p => 1,
            S2 | S2p | S2m => 2,
            S3 | S3p | S3m => 3,
            S5m => 5,
        }
    }

    pub fn has_dummy(self) -> bool {
        matches!(self, S1p | S2p | S3p)
    }

    pub fn name(self) -> &'static str {
        match self {
            S0 => "S0",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            S1p => "S1+",
            S2p => "S2+",
            S3p => "S3+",
            S2m => "S2-",
            S3m => "S3-",
            S5m => "S5-",
        }
    }
}

impl fmt::Display for TreeSetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The partial order on tree sets: `S1 <= S1+` and `Si- <= Si <= Si+` for
/// `i` in {2, 3}, closed reflexively and transitively.
pub fn leq(a: TreeSetId, b: TreeSetId) -> bool {
    a == b || matches!((a, b), (S1, S1p) | (S2m, S2) | (S2, S2p) | (S2m, S2p) | (S3m, S3) | (S3, S3p) | (S3m, S3p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    L0,
    L00,
    L1,
    L10,
    L2,
    L20,
    L21,
    L30,
    L31,
    L32,
}

impl Label {
    pub const ALL: [Label; 10] = [
        Label::L0,
        Label::L00,
        Label::L1,
        Label::L10,
        Label::L2,
        Label::L20,
        Label::L21,
        Label::L30,
        Label::L31,
        Label::L32,
    ];

    pub fn weight(self) -> usize {
        use Label::*;
        match self {
            L0 | L00 => 0,
            L1 | L10 => 1,
            L2 | L20 | L21 => 2,
            L30 | L31 | L32 => 3,
        }
    }

    /// `L_i` labels allow subdividing the edge `i` times.
    pub fn subdivisions(self) -> Option<usize> {
        match self {
            Label::L0 => Some(0),
            Label::L1 => Some(1),
            Label::L2 => Some(2),
            _ => None,
        }
    }

    /// `L_{w0}` for weight `w`.
    pub fn zero_variant(w: usize) -> Label {
        match w % 4 {
            0 => Label::L00,
            1 => Label::L10,
            2 => Label::L20,
            _ => Label::L30,
        }
    }

    pub fn involution(self) -> Label {
        match self {
            Label::L31 => Label::L32,
            Label::L32 => Label::L31,
            l => l,
        }
    }

    /// The literal pair list of the label.
    pub fn pairs(self) -> &'static [(TreeSetId, TreeSetId)] {
        use Label::*;
        match self {
            L0 => &[(S0, S0)],
            L00 => &[(S0, S0), (S1, S3p), (S1p, S3), (S2, S2p), (S2p, S2), (S3, S1p), (S3p, S1)],
            L1 => &[(S0, S1), (S1, S0)],
            L10 => &[(S0, S1), (S1, S0), (S2, S3p), (S2p, S3), (S3, S2p), (S3p, S2)],
            L2 => &[(S0, S2), (S1, S1), (S2, S0)],
            L20 => &[(S0, S2), (S1, S1), (S2, S0), (S3, S3p), (S3p, S3)],
            L21 => &[(S0, S2m), (S1, S1p), (S1, S5m), (S1p, S1), (S5m, S1), (S2m, S0), (S3m, S3m)],
            L30 => &[(S0, S3), (S1, S2), (S2, S1), (S3, S0)],
            L31 => &[(S0, S3m), (S1, S2m), (S2, S1p), (S2, S5m), (S2p, S1), (S3, S0)],
            L32 => &[(S0, S3), (S1, S2p), (S1p, S2), (S5m, S2), (S2m, S1), (S3m, S0)],
        }
    }

    pub fn contains(self, p: TreeSetId, q: TreeSetId) -> bool {
        self.pairs().contains(&(p, q))
    }

    /// Smallest literal pair `(p1, q1)` with `p1 <= p` and `q1 <= q`.
    pub fn admits(self, p: TreeSetId, q: TreeSetId) -> Option<(TreeSetId, TreeSetId)> {
        self.pairs().iter().copied().filter(|&(p1, q1)| leq(p1, p) && leq(q1, q)).min()
    }

    pub fn name(self) -> &'static str {
        use Label::*;
        match self {
            L0 => "L0",
            L00 => "L00",
            L1 => "L1",
            L10 => "L10",
            L2 => "L2",
            L20 => "L20",
            L21 => "L21",
            L30 => "L30",
            L31 => "L31",
            L32 => "L32",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Free-function form of [`Label::involution`].
pub fn involution(l: Label) -> Label {
    l.involution()
}

/// Free-function form of [`Label::admits`].
pub fn admits(l: Label, p: TreeSetId, q: TreeSetId) -> Option<(TreeSetId, TreeSetId)> {
    l.admits(p, q)
}

/// Text dump of the whole catalog, one label per line.
pub fn catalog_dump() -> String {
    let mut s = String::new();
    for l in Label::ALL {
        let pairs: Vec<String> = l.pairs().iter().map(|(p, q)| format!("({p},{q})")).collect();
        s.push_str(&format!(
            "{:<4} weight={} f={:<4} {{{}}}\n",
            l.name(),
            l.weight(),
            l.involution().name(),
            pairs.join(", ")
        ));
    }
    s.push_str("order: S1<=S1+, S2-<=S2<=S2+, S3-<=S3<=S3+\n");
    s
}

/// A small rooted tree. Slot 0 is the root; every other slot names its
/// parent slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeShape {
    parent: Vec<Option<usize>>,
    dummy: Vec<bool>,
}

impl TreeShape {
    pub fn root_only() -> Self {
        TreeShape { parent: vec![None], dummy: vec![false] }
    }

    /// Builds a shape from the parents of slots `1..`; each parent must be
    /// an earlier slot.
    pub fn from_parents(parents: &[usize]) -> Self {
        let mut t = TreeShape::root_only();
        for &p in parents {
            t.push(p, false);
        }
        t
    }

    /// Appends a slot under `parent` and returns its index.
    pub fn push(&mut self, parent: usize, dummy: bool) -> usize {
        assert!(parent < self.parent.len(), "parent slot must exist");
        self.parent.push(Some(parent));
        self.dummy.push(dummy);
        self.parent.len() - 1
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_dummy(&self, slot: usize) -> bool {
        self.dummy[slot]
    }

    pub fn parent(&self, slot: usize) -> Option<usize> {
        self.parent[slot]
    }

    pub fn children(&self, slot: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.parent[c] == Some(slot)).collect()
    }

    /// AHU-style canonical string of the rooted (unlabelled) tree, dummy
    /// flags included.
    pub fn canonical(&self) -> String {
        self.canonical_at(0)
    }

    fn canonical_at(&self, slot: usize) -> String {
        let mut kids: Vec<String> = self.children(slot).into_iter().map(|c| self.canonical_at(c)).collect();
        kids.sort();
        let tag = if self.dummy[slot] { "d" } else { "" };
        format!("({tag}{})", kids.concat())
    }

    fn dummy_count(&self) -> usize {
        self.dummy.iter().filter(|&&d| d).count()
    }

    /// Membership test for a tree set.
    pub fn is_member(&self, set: TreeSetId) -> bool {
        if self.dummy[0] {
            return false;
        }
        let n = self.len();
        let root_degree = self.children(0).len();
        match set {
            S0 | S1 | S2 | S3 => n == set.active_count() + 1 && self.dummy_count() == 0,
            S1p | S2p | S3p => n == set.active_count() + 2 && self.dummy_count() == 1,
            S2m => n == 3 && root_degree == 2 && self.dummy_count() == 0,
            S3m => n == 4 && root_degree >= 2 && self.dummy_count() == 0,
            S5m => self.dummy_count() == 0 && s5m_catalog().contains(&self.canonical()),
        }
    }

    /// Whether the shape belongs to some set `s` with `s <= set`.
    pub fn fits(&self, set: TreeSetId) -> bool {
        TreeSetId::ALL.iter().any(|&s| leq(s, set) && self.is_member(s))
    }
}

/// All rooted trees on four vertices.
fn s3_shapes() -> Vec<TreeShape> {
    vec![
        TreeShape::from_parents(&[0, 1, 2]),
        TreeShape::from_parents(&[0, 0, 1]),
        TreeShape::from_parents(&[0, 0, 0]),
        TreeShape::from_parents(&[0, 1, 1]),
    ]
}

/// All rooted trees on three vertices.
fn s2_shapes() -> Vec<TreeShape> {
    vec![TreeShape::from_parents(&[0, 1]), TreeShape::from_parents(&[0, 0])]
}

fn fuse_at_root(a: &TreeShape, b: &TreeShape) -> TreeShape {
    let mut out = a.clone();
    let offset = a.len() - 1;
    for slot in 1..b.len() {
        let p = b.parent(slot).unwrap();
        let mapped = if p == 0 { 0 } else { p + offset };
        out.push(mapped, false);
    }
    out
}

/// Canonical strings of every member of `S5-`: an `S3` tree and an `S2`
/// tree with their roots identified.
pub fn s5m_catalog() -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for a in s3_shapes() {
        for b in s2_shapes() {
            out.insert(fuse_at_root(&a, &b).canonical());
        }
    }
    out
}

/// A fixed representative of a tree set.
pub fn canonical_member(set: TreeSetId) -> TreeShape {
    let path = |k: usize| TreeShape::from_parents(&(0..k).collect::<Vec<_>>());
    match set {
        S0 | S1 | S2 | S3 => path(set.active_count()),
        S1p | S2p | S3p => {
            let mut t = path(set.active_count());
            let last = t.len() - 1;
            t.push(last, true);
            t
        }
        S2m => TreeShape::from_parents(&[0, 0]),
        S3m => TreeShape::from_parents(&[0, 0, 1]),
        S5m => fuse_at_root(&TreeShape::from_parents(&[0, 0, 1]), &TreeShape::from_parents(&[0, 1])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_examples() {
        assert_eq!(Label::L31.involution(), Label::L32);
        assert_eq!(Label::L2.involution(), Label::L2);
        assert_eq!(Label::L32.involution().involution(), Label::L32);
    }

    #[test]
    fn pairs_mirror_under_involution() {
        for l in Label::ALL {
            for &(p, q) in l.pairs() {
                assert!(l.involution().contains(q, p), "{l}: ({p},{q})");
            }
            assert_eq!(l.pairs().len(), l.involution().pairs().len());
        }
    }

    #[test]
    fn order_examples() {
        assert!(leq(S2m, S2p));
        assert!(leq(S1, S1p));
        assert!(!leq(S1, S2));
        for s in TreeSetId::ALL {
            if s != S0 {
                assert!(!leq(S0, s) && !leq(s, S0));
            }
            if s != S5m {
                assert!(!leq(S5m, s) && !leq(s, S5m));
            }
        }
    }

    #[test]
    fn order_is_partial_order() {
        for a in TreeSetId::ALL {
            assert!(leq(a, a));
            for b in TreeSetId::ALL {
                if a != b && leq(a, b) {
                    assert!(!leq(b, a));
                }
                for c in TreeSetId::ALL {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c), "{a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn admits_examples() {
        assert_eq!(Label::L20.admits(S3, S3p), Some((S3, S3p)));
        assert_eq!(Label::L21.admits(S1, S1p), Some((S1, S1p)));
        assert_eq!(Label::L2.admits(S3, S3p), None);
        assert_eq!(Label::L21.admits(S3, S3p), Some((S3m, S3m)));
    }

    #[test]
    fn weights_follow_names() {
        for l in Label::ALL {
            let digit = l.name().as_bytes()[1] - b'0';
            assert_eq!(l.weight(), digit as usize);
        }
    }

    #[test]
    fn zero_labels_pair_sums() {
        // For L_i and L_{i0}: plain pairs sum to i, one-plus pairs to i + 4.
        let idx = |s: TreeSetId| s.active_count();
        for l in [Label::L0, Label::L00, Label::L1, Label::L10, Label::L2, Label::L20, Label::L30] {
            for &(p, q) in l.pairs() {
                let plus = p.has_dummy() as usize + q.has_dummy() as usize;
                assert!(plus <= 1);
                assert_eq!((idx(p) + idx(q)) % 4, l.weight(), "{l} ({p},{q})");
                assert_eq!(idx(p) + idx(q), l.weight() + 4 * plus, "{l} ({p},{q})");
            }
        }
    }

    #[test]
    fn canonical_members_are_members() {
        for s in TreeSetId::ALL {
            let t = canonical_member(s);
            assert!(t.is_member(s), "{s}: {t:?}");
        }
        assert_eq!(canonical_member(S0).len(), 1);
        assert_eq!(canonical_member(S2m).children(0).len(), 2);
        assert_eq!(canonical_member(S5m).len(), 6);
    }

    #[test]
    fn s5m_members() {
        let cat = s5m_catalog();
        // P6 rooted at the third vertex is a fusion of P4 (end) and P3 (end).
        let p6_mid = TreeShape::from_parents(&[0, 1, 2, 0, 4]);
        assert!(cat.contains(&p6_mid.canonical()));
        // A path rooted at its end is never in S5-.
        let p6_end = TreeShape::from_parents(&[0, 1, 2, 3, 4]);
        assert!(!p6_end.is_member(S5m));
        // Root with a single child cannot split into 3 + 2.
        let spider = TreeShape::from_parents(&[0, 1, 1, 1, 1]);
        assert!(!spider.is_member(S5m));
        assert!(cat.iter().all(|c| c.matches('(').count() == 6));
    }

    #[test]
    fn dummy_root_rejected() {
        let mut t = TreeShape::root_only();
        t.dummy[0] = true;
        t.push(0, false);
        assert!(!t.is_member(S1));
        assert!(!t.is_member(S1p));
    }
}
