//! Partitions of connected graphs into parts of prescribed sizes, each part
//! contained in a small subtree.
//!
//! Works on a BFS spanning tree rooted at vertex 0. For the next size `s`,
//! let `w` be the deepest vertex whose remaining subtree has at least `s`
//! vertices. Either that subtree is the part, or a minimal set of child
//! subtrees of `w` reaches `s` vertices and the `s` deepest of them are
//! taken. Either way the rest of the tree stays connected, and the part
//! sits in a subtree of order at most `2s - 1`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{SimpleGraph, Vertex};
use crate::verify::Part;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreePartitionError {
    #[error("part sizes sum to {sum}, but the graph has {n} vertices")]
    SizeMismatch { sum: usize, n: usize },
    #[error("part sizes must be positive")]
    ZeroSize,
    #[error("graph is not connected")]
    Disconnected,
}

struct RootedTree {
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    children: Vec<Vec<Vertex>>,
    /// BFS order, so every vertex comes after its parent.
    order: Vec<Vertex>,
}

impl RootedTree {
    fn bfs(g: &SimpleGraph, root: Vertex) -> Self {
        let n = g.n();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<Vertex> = g.neighbors(v).filter(|&w| depth[w] == usize::MAX).collect();
            next.sort_unstable();
            for w in next {
                depth[w] = depth[v] + 1;
                parent[w] = Some(v);
                children[v].push(w);
                queue.push_back(w);
            }
        }
        RootedTree { parent, depth, children, order }
    }

    /// Sizes of the subtrees restricted to `alive` vertices.
    fn sizes(&self, alive: &[bool]) -> Vec<usize> {
        let mut size = vec![0; alive.len()];
        for &v in self.order.iter().rev() {
            if alive[v] {
                size[v] += 1;
                if let Some(p) = self.parent[v] {
                    size[p] += size[v];
                }
            }
        }
        size
    }

    fn collect(&self, top: Vertex, alive: &[bool], out: &mut Vec<Vertex>) {
        let mut stack = vec![top];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().copied().filter(|&c| alive[c]));
        }
    }
}

/// Removes leaves outside `keep` until none are left.
fn prune(tree: &RootedTree, mut set: Vec<Vertex>, keep: &[Vertex]) -> Vec<Vertex> {
    loop {
        let degree = |v: Vertex, set: &[Vertex]| {
            let up = tree.parent[v].is_some_and(|p| set.contains(&p));
            let down = tree.children[v].iter().filter(|c| set.contains(c)).count();
            usize::from(up) + down
        };
        let leaf = set.iter().position(|&v| !keep.contains(&v) && degree(v, &set) <= 1);
        match leaf {
            Some(i) => {
                set.swap_remove(i);
            }
            None => {
                set.sort_unstable();
                return set;
            }
        }
    }
}

/// Partitions `V(g)` into parts of the given sizes, in order. Each part
/// carries as witness the vertex set of a subtree of `g` of order at most
/// `2 * size - 1` that contains it.
pub fn partition_tree(g: &SimpleGraph, sizes: &[usize]) -> Result<Vec<Part>, TreePartitionError> {
    let n = g.n();
    let sum: usize = sizes.iter().sum();
    if sum != n {
        return Err(TreePartitionError::SizeMismatch { sum, n });
    }
    if sizes.contains(&0) {
        return Err(TreePartitionError::ZeroSize);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Err(TreePartitionError::Disconnected);
    }
    let tree = RootedTree::bfs(g, 0);
    let mut alive = vec![true; n];
    let mut parts = Vec::with_capacity(sizes.len());
    for &s in sizes {
        let size = tree.sizes(&alive);
        let w = (0..n)
            .filter(|&v| alive[v] && size[v] >= s)
            .max_by_key(|&v| (tree.depth[v], std::cmp::Reverse(v)))
            .expect("the root's subtree holds every remaining vertex");
        let mut region = Vec::new();
        let part: Vec<Vertex> = if size[w] == s {
            tree.collect(w, &alive, &mut region);
            region.clone()
        } else {
            let mut comps: Vec<Vertex> = tree.children[w].iter().copied().filter(|&c| alive[c]).collect();
            comps.sort_by_key(|&c| (std::cmp::Reverse(size[c]), c));
            let mut chosen = Vec::new();
            let mut total = 0;
            for c in comps {
                if total >= s {
                    break;
                }
                total += size[c];
                chosen.push(c);
            }
            // Drop components that are not needed, smallest first.
            for i in (0..chosen.len()).rev() {
                if total - size[chosen[i]] >= s {
                    total -= size[chosen[i]];
                    chosen.remove(i);
                }
            }
            for &c in &chosen {
                tree.collect(c, &alive, &mut region);
            }
            let mut by_distance = region.clone();
            by_distance.sort_by_key(|&v| (std::cmp::Reverse(tree.depth[v]), v));
            by_distance.truncate(s);
            region.push(w);
            by_distance
        };
        for &v in &part {
            alive[v] = false;
        }
        let witness = prune(&tree, region, &part);
        let mut p = Part::new(part);
        p.witness = Some(witness);
        parts.push(p);
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_four() {
        let parts = partition_tree(&SimpleGraph::path(4), &[4]).unwrap();
        assert_eq!(parts[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(parts[0].witness.as_deref(), Some(&[0, 1, 2, 3][..]));
    }

    #[test]
    fn path_of_six_peels_the_far_end() {
        let parts = partition_tree(&SimpleGraph::path(6), &[3, 3]).unwrap();
        assert_eq!(parts[0].vertices, vec![3, 4, 5]);
        assert_eq!(parts[1].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn star_uses_the_centre_as_connector() {
        // K_{1,4}: each leaf is its own component below the centre.
        let g = SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let parts = partition_tree(&g, &[2, 3]).unwrap();
        assert_eq!(parts[0].vertices, vec![1, 2]);
        assert_eq!(parts[0].witness.as_deref(), Some(&[0, 1, 2][..]));
        assert_eq!(parts[1].vertices, vec![0, 3, 4]);
    }

    #[test]
    fn errors() {
        let g = SimpleGraph::path(4);
        assert_eq!(partition_tree(&g, &[3]), Err(TreePartitionError::SizeMismatch { sum: 3, n: 4 }));
        assert_eq!(partition_tree(&g, &[4, 0]), Err(TreePartitionError::ZeroSize));
        let two = SimpleGraph::new(2);
        assert_eq!(partition_tree(&two, &[1, 1]), Err(TreePartitionError::Disconnected));
    }
}
