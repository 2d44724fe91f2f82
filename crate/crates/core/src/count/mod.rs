//! Exact forest and tree counts.

mod brute;
mod engine;
mod memo;

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph};

pub use brute::{
    count_forests_bruteforce, count_forests_bruteforce_with_cap,
    count_forests_separating_bruteforce, count_trees_bruteforce, count_trees_kirchhoff,
    CountError, DEFAULT_BRUTE_FORCE_EDGE_CAP,
};
pub use memo::{
    CacheStats, CountKind, MemoCache, CACHE_CAP_ENV, DEFAULT_MEMO_ENTRY_CAP,
    DEFAULT_MEMO_VERTEX_CAP,
};

/// Exact count; these grow roughly like `c^|E|`, so no fixed width suffices.
pub type Count = BigUint;

/// Number of spanning forests `F(G) = T(G; 2, 1)`.
pub fn count_forests(g: &MultiGraph, cache: &MemoCache) -> Count {
    engine::Engine::new(cache, CountKind::Forests).eval(g)
}

/// Number of spanning trees `τ(G) = T(G; 1, 1)`; zero for disconnected graphs.
pub fn count_trees(g: &MultiGraph, cache: &MemoCache) -> Count {
    engine::Engine::new(cache, CountKind::Trees).eval(g)
}

/// Same as [`count_forests`] but never forks onto the rayon pool. Useful when the
/// caller is already parallel over many small graphs.
pub fn count_forests_sequential(g: &MultiGraph, cache: &MemoCache) -> Count {
    engine::Engine::new(cache, CountKind::Forests)
        .sequential()
        .eval(g)
}

pub fn count_trees_sequential(g: &MultiGraph, cache: &MemoCache) -> Count {
    engine::Engine::new(cache, CountKind::Trees)
        .sequential()
        .eval(g)
}

/// Forests of `g` in which the vertices of `set` lie in pairwise distinct
/// components. Identifying `set` to one vertex turns exactly these forests into
/// the forests of the quotient.
pub fn count_forests_separating(
    g: &MultiGraph,
    set: &[usize],
    cache: &MemoCache,
) -> Result<Count, GraphError> {
    if set.is_empty() {
        return Ok(count_forests(g, cache));
    }
    let q = g.contract_set(set)?;
    Ok(count_forests(&q, cache))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one block")]
    Repeated(usize),
    #[error("partition has an empty block")]
    EmptyBlock,
}

/// Quotient of `g` by a partial partition of its vertices: each block becomes one
/// vertex (loops dropped); unlisted vertices stay as they are.
pub fn quotient(g: &MultiGraph, partition: &[Vec<usize>]) -> Result<MultiGraph, ExtensionError> {
    let n = g.vertex_count();
    let mut block_of = vec![usize::MAX; n];
    for (i, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(ExtensionError::EmptyBlock);
        }
        for &v in block {
            if v >= n {
                return Err(ExtensionError::OutOfRange { vertex: v, n });
            }
            if block_of[v] != usize::MAX {
                return Err(ExtensionError::Repeated(v));
            }
            block_of[v] = i;
        }
    }
    let mut map = vec![0usize; n];
    let mut block_id = vec![usize::MAX; partition.len()];
    let mut next = 0;
    for v in 0..n {
        let b = block_of[v];
        if b == usize::MAX {
            map[v] = next;
            next += 1;
        } else {
            if block_id[b] == usize::MAX {
                block_id[b] = next;
                next += 1;
            }
            map[v] = block_id[b];
        }
    }
    Ok(g.relabel_into(next, &map))
}

/// Number of forests of `g` that stay acyclic once the vertices inside each block of
/// `partition` are joined to each other from outside, i.e. `F(g / partition)`.
pub fn extension_count(
    g: &MultiGraph,
    partition: &[Vec<usize>],
    cache: &MemoCache,
) -> Result<Count, ExtensionError> {
    Ok(count_forests(&quotient(g, partition)?, cache))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(g: &MultiGraph) -> u64 {
        let c = count_forests(g, &MemoCache::default());
        u64::try_from(&c).unwrap()
    }

    fn t(g: &MultiGraph) -> u64 {
        u64::try_from(&count_trees(g, &MemoCache::default())).unwrap()
    }

    #[test]
    fn small_named_graphs() {
        assert_eq!(f(&MultiGraph::empty(0)), 1);
        assert_eq!(f(&MultiGraph::empty(5)), 1);
        assert_eq!(f(&MultiGraph::complete(2)), 2);
        assert_eq!(f(&MultiGraph::cycle(2)), 3);
        assert_eq!(f(&MultiGraph::complete(3)), 7);
        assert_eq!(f(&MultiGraph::complete(4)), 38);
        assert_eq!(f(&MultiGraph::complete(5)), 291);
        assert_eq!(f(&MultiGraph::complete_bipartite(3, 3)), 328);
        assert_eq!(f(&MultiGraph::complete(4).delete_edge(0, 1).unwrap()), 24);
        assert_eq!(f(&MultiGraph::complete(5).delete_edge(0, 1).unwrap()), 198);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(t(&MultiGraph::complete(5)), 125);
        assert_eq!(t(&MultiGraph::complete_bipartite(3, 3)), 81);
        assert_eq!(t(&MultiGraph::cycle(2)), 2);
        assert_eq!(t(&MultiGraph::empty(1)), 1);
        assert_eq!(t(&MultiGraph::empty(2)), 0);
        assert_eq!(t(&MultiGraph::path(6)), 1);
    }

    #[test]
    fn disconnected_forests_multiply() {
        let g = MultiGraph::complete(3).disjoint_union(&MultiGraph::complete(4));
        assert_eq!(f(&g), 7 * 38);
        assert_eq!(t(&g), 0);
    }

    #[test]
    fn bundle_rule() {
        let g = MultiGraph::from_weighted(3, &[(0, 1, 3), (1, 2, 2), (0, 2, 1)]).unwrap();
        assert_eq!(
            count_forests(&g, &MemoCache::disabled()),
            count_forests_bruteforce(&g).unwrap()
        );
    }

    #[test]
    fn separating_pairs() {
        let k4 = MultiGraph::complete(4);
        let cache = MemoCache::default();
        let sep = count_forests_separating(&k4, &[0, 1], &cache).unwrap();
        assert_eq!(sep, count_forests_separating_bruteforce(&k4, &[0, 1]).unwrap());
        assert!(count_forests_separating(&k4, &[9], &cache).is_err());
    }

    #[test]
    fn quotient_validates_blocks() {
        let g = MultiGraph::path(4);
        assert_eq!(quotient(&g, &[vec![0, 1], vec![1]]), Err(ExtensionError::Repeated(1)));
        assert_eq!(quotient(&g, &[vec![]]), Err(ExtensionError::EmptyBlock));
        let q = quotient(&g, &[vec![0, 3]]).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(f(&q), 7);
    }
}
