//! Partitions of 2-connected graphs into nearly connected 4-sets.
//!
//! A set `A` of vertices is nearly connected when `G[A]` is connected or
//! `G[A + x]` is connected for some extra vertex `x`. Every 2-connected
//! graph whose order is divisible by 4 has a partition into such sets,
//! which gives a `K_4`-factor of `G^4`. The [`engine`] computes one by
//! repeatedly contracting a labelled multigraph and lifting the solution
//! back; [`verify`] checks results independently.

pub mod engine;
pub mod generators;
pub mod graph;
pub mod io;
pub mod labels;
pub mod selftest;
pub mod tree_partition;
pub mod verify;

pub use engine::{partition_2connected, partition_2connected_traced, EngineError, PartitionResult};
pub use graph::{graph_power, is_block, GraphError, Multigraph, SimpleGraph, Vertex};
pub use labels::{admits, involution, Label, TreeSetId};
pub use tree_partition::{partition_tree, TreePartitionError};
pub use verify::{has_kr_factor, verify_partition, Part, Partition, VerifyFailure};
