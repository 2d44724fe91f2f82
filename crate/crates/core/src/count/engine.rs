use num_traits::{One, Zero};

use super::memo::{CountKind, MemoCache};
use super::Count;
use crate::graph::{canonical_key, MultiGraph};

/// Graphs with at least this many edges split their two branches across the
/// rayon pool.
const PARALLEL_MIN_EDGES: usize = 22;

/// Deletion–contraction evaluator for `T(2,1)` or `T(1,1)`.
///
/// Every connected input is first split into blocks (cut-vertex factorization);
/// isolated vertices, pendant edges and bridges surface as trivial blocks. A block
/// on two vertices is a bundle of `t` parallel edges, worth `1 + t` forests or `t`
/// trees. Larger blocks are looked up in the cache and otherwise branched on one
/// bundle: `X(G) = X(G - bundle) + t * X(G / uv)`.
pub(crate) struct Engine<'a> {
    cache: &'a MemoCache,
    kind: CountKind,
    parallel: bool,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(cache: &'a MemoCache, kind: CountKind) -> Self {
        Engine {
            cache,
            kind,
            parallel: true,
        }
    }

    pub(crate) fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub(crate) fn eval(&self, g: &MultiGraph) -> Count {
        let comps = g.components();
        if comps.len() <= 1 {
            return self.eval_connected(g);
        }
        match self.kind {
            CountKind::Trees => Count::zero(),
            CountKind::Forests => comps
                .iter()
                .filter(|c| c.len() > 1)
                .map(|c| self.eval_connected(&g.induced(c)))
                .product(),
        }
    }

    fn eval_connected(&self, g: &MultiGraph) -> Count {
        if g.bundle_count() == 0 {
            return Count::one();
        }
        let blocks = g.blocks();
        if blocks.len() == 1 && blocks[0].len() == g.vertex_count() {
            return self.eval_block(g);
        }
        blocks
            .iter()
            .map(|b| self.eval_block(&g.induced(b)))
            .product()
    }

    /// `g` is a single block: a bundle or a 2-connected multigraph.
    fn eval_block(&self, g: &MultiGraph) -> Count {
        let n = g.vertex_count();
        if n == 2 {
            let t = g.edge_count() as u64;
            return match self.kind {
                CountKind::Forests => Count::from(1 + t),
                CountKind::Trees => Count::from(t),
            };
        }
        if n == 3 {
            // triangle with multiplicities a, b, c
            let m: Vec<u64> = g.bundles().map(|(_, t)| t as u64).collect();
            let (a, b, c) = (m[0], m[1], m[2]);
            let pairs = a * b + b * c + c * a;
            return match self.kind {
                CountKind::Forests => Count::from(1 + a + b + c + pairs),
                CountKind::Trees => Count::from(pairs),
            };
        }
        let key = if self.cache.accepts(n) {
            let key = canonical_key(g);
            if let Some(hit) = self.cache.get(self.kind, &key) {
                return hit;
            }
            Some(key)
        } else {
            None
        };
        let ((u, v), t) = branch_bundle(g);
        let deleted = g.delete_bundle(u, v).expect("bundle present");
        let contracted = g.contract_edge(u, v).expect("bundle present");
        let (a, b) = if self.parallel && g.edge_count() >= PARALLEL_MIN_EDGES {
            rayon::join(
                || self.eval_connected(&deleted),
                || self.eval_connected(&contracted),
            )
        } else {
            (
                self.eval_connected(&deleted),
                self.eval_connected(&contracted),
            )
        };
        let value = a + b * Count::from(t);
        if let Some(key) = key {
            self.cache.insert(self.kind, key, value.clone());
        }
        value
    }
}

/// Bundle of maximum multiplicity; ties broken by larger `d(u) + d(v)`, then by the
/// lexicographically smallest pair.
pub(crate) fn branch_bundle(g: &MultiGraph) -> ((usize, usize), u32) {
    let deg = g.degrees();
    let mut best: Option<((usize, usize), u32, usize)> = None;
    for ((u, v), t) in g.bundles() {
        let s = deg[u] + deg[v];
        let better = match best {
            None => true,
            Some((_, bt, bs)) => t > bt || (t == bt && s > bs),
        };
        if better {
            best = Some(((u, v), t, s));
        }
    }
    let (e, t, _) = best.expect("graph has an edge");
    (e, t)
}
