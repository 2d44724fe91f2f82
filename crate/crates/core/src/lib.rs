//! Exact spanning-forest and spanning-tree counting for loopless multigraphs,
//! together with the tooling used to check lower bounds on forest counts:
//! complete lifts and their constants, exact bound comparison, ring families,
//! gadget ratio tables, a named-graph catalog and exhaustive family sweeps.

pub mod bound;
pub mod count;
pub mod graph;
pub mod harness;
pub mod lift;

pub use count::{count_forests, count_trees, Count, MemoCache};
pub use graph::{canonical_key, CanonicalKey, MultiGraph};
