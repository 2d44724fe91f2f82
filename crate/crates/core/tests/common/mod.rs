#![allow(dead_code)]

use forestry::MultiGraph;
use proptest::prelude::*;
use rand::Rng;

/// Multigraph with `n` vertices built from `(u, v, t)` triples; loops are dropped.
pub fn build(n: usize, triples: &[(usize, usize, u32)]) -> MultiGraph {
    let kept: Vec<(usize, usize, u32)> = triples
        .iter()
        .filter(|&&(u, v, _)| u != v)
        .map(|&(u, v, t)| (u % n, v % n, t))
        .filter(|&(u, v, _)| u != v)
        .collect();
    let mut g = MultiGraph::empty(n);
    for (u, v, t) in kept {
        for _ in 0..t {
            g = g.with_edge(u, v).unwrap();
        }
    }
    g
}

/// Multigraphs on `1..=max_n` vertices with at most `max_edges` edges and
/// multiplicity at most `max_mult` per added bundle.
pub fn arb_multigraph(max_n: usize, max_bundles: usize, max_mult: u32) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, 1..=max_mult), 0..=max_bundles)
            .prop_map(move |t| build(n, &t))
    })
}

/// As [`arb_multigraph`] but with at least one edge.
pub fn arb_nonempty(max_n: usize, max_bundles: usize, max_mult: u32) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, 1..=max_mult), 1..=max_bundles)
            .prop_map(move |t| build(n, &t))
            .prop_filter("has an edge", |g| g.edge_count() > 0)
    })
}

pub fn arb_connected(max_n: usize, max_bundles: usize, max_mult: u32) -> impl Strategy<Value = MultiGraph> {
    // a random spanning tree keeps every sample connected
    (2..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec((0..n, 0..n, 1..=max_mult), 0..=max_bundles),
            proptest::collection::vec(any::<usize>(), n - 1),
        )
            .prop_map(move |(mut triples, parents)| {
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    triples.push((p % v, v, 1));
                }
                build(n, &triples)
            })
    })
}

pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, edges: usize, max_mult: u32) -> MultiGraph {
    let mut g = MultiGraph::empty(n);
    if n < 2 {
        return g;
    }
    let edges = edges.min(n * (n - 1) / 2 * max_mult as usize);
    let mut placed = 0;
    while placed < edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || g.multiplicity(u, v) >= max_mult {
            continue;
        }
        g = g.with_edge(u, v).unwrap();
        placed += 1;
    }
    g
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize, max_mult: u32) -> MultiGraph {
    let mut g = MultiGraph::empty(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g = g.with_edge(u, v).unwrap();
    }
    let room = (n * n.saturating_sub(1) / 2 * max_mult as usize).saturating_sub(n.saturating_sub(1));
    let extra = extra.min(room);
    let mut placed = 0;
    while n >= 2 && placed < extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || g.multiplicity(u, v) >= max_mult {
            continue;
        }
        g = g.with_edge(u, v).unwrap();
        placed += 1;
    }
    g
}

/// All permutations of `0..n`, Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Multiplicity matrix, for isomorphism tests.
pub fn matrix(g: &MultiGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for ((u, v), t) in g.bundles() {
        m[u][v] = t;
        m[v][u] = t;
    }
    m
}

/// Isomorphism by trying every permutation.
pub fn isomorphic_bruteforce(g: &MultiGraph, h: &MultiGraph, perms: &[Vec<usize>]) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let a = matrix(g);
    let b = matrix(h);
    let n = a.len();
    perms
        .iter()
        .any(|p| (0..n).all(|i| (0..n).all(|j| a[i][j] == b[p[i]][p[j]])))
}

/// Simple graphs on `n` vertices, one per labeled edge subset.
pub fn all_labeled_simple(n: usize) -> impl Iterator<Item = MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        MultiGraph::from_edge_list(n, &chosen).unwrap()
    })
}

/// Independent union-find used by the test oracles.
pub struct Dsu(pub Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Edge subsets of `g` that are forests, as lists of edge indices into `edge_list()`.
pub fn forests_of(g: &MultiGraph) -> Vec<Vec<usize>> {
    let edges = g.edge_list();
    assert!(edges.len() <= 20, "too many edges for subset enumeration");
    let mut out = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut dsu = Dsu::new(g.vertex_count());
        let mut ok = true;
        let mut chosen = Vec::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if !dsu.union(u, v) {
                    ok = false;
                    break;
                }
                chosen.push(i);
            }
        }
        if ok {
            out.push(chosen);
        }
    }
    out
}
