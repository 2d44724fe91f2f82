//! Canonical labeling of multigraphs by colour refinement plus individualization
//! search.
//!
//! The refinement step splits cells by the multiset of `(cell, multiplicity)` pairs
//! seen from each vertex until the ordered partition is equitable. When cells remain
//! non-trivial, the first smallest non-singleton cell is branched on, each child
//! individualizing one vertex. Every discrete leaf yields a serialization of the
//! relabeled adjacency matrix; the lexicographically least one is the canonical form.
//! Automorphisms discovered as equal leaves prune sibling branches in the same orbit.

use std::fmt;

use super::MultiGraph;

/// Byte string identifying a multigraph up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalKey)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Result of canonical labeling.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

impl Canonical {
    /// Canonical position of every vertex (inverse of `order`).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_key(g: &MultiGraph) -> CanonicalKey {
    canonical_form(g).key
}

pub fn canonical_form(g: &MultiGraph) -> Canonical {
    let n = g.vertex_count();
    let mut w = vec![0u32; n * n];
    for ((u, v), t) in g.bundles() {
        w[u * n + v] = t;
        w[v * n + u] = t;
    }
    let mut search = Search {
        n,
        w: &w,
        best: None,
        autos: Vec::new(),
    };
    let mut part = Partition::unit(n, &w);
    search.refine(&mut part);
    search.descend(part, &mut Vec::new());
    let (cert, order) = search.best.expect("search visits at least one leaf");
    let mut bytes = Vec::with_capacity(cert.len() + 4);
    push_varint(&mut bytes, n as u32);
    for x in cert {
        push_varint(&mut bytes, x);
    }
    Canonical {
        key: CanonicalKey(bytes),
        order,
    }
}

fn push_varint(out: &mut Vec<u8>, mut x: u32) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Ordered partition of the vertex set: `cells[i]` lists vertices, `cell_of[v]` its index.
#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Starting partition split by weighted degree.
    fn unit(n: usize, w: &[u32]) -> Self {
        let mut deg: Vec<(u64, usize)> = (0..n)
            .map(|v| (w[v * n..(v + 1) * n].iter().map(|&x| x as u64).sum(), v))
            .collect();
        deg.sort_unstable();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for (d, v) in deg {
            if last != Some(d) {
                cells.push(Vec::new());
                last = Some(d);
            }
            cells.last_mut().unwrap().push(v);
        }
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        Partition { cells, cell_of }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }

    fn reindex(&mut self) {
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                self.cell_of[v] = i;
            }
        }
    }

    /// Moves `v` into a singleton cell placed just before the rest of its cell.
    fn individualize(&mut self, v: usize) {
        let c = self.cell_of[v];
        let rest: Vec<usize> = self.cells[c].iter().copied().filter(|&x| x != v).collect();
        self.cells[c] = vec![v];
        self.cells.insert(c + 1, rest);
        self.reindex();
    }
}

struct Search<'a> {
    n: usize,
    w: &'a [u32],
    best: Option<(Vec<u32>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Refines to the coarsest equitable partition finer than `part`.
    fn refine(&self, part: &mut Partition) {
        let n = self.n;
        loop {
            let mut changed = false;
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(part.cells.len());
            for cell in &part.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let row = &self.w[v * n..(v + 1) * n];
                        let mut sig: Vec<(usize, u32)> = row
                            .iter()
                            .enumerate()
                            .filter(|&(_, &t)| t > 0)
                            .map(|(u, &t)| (part.cell_of[u], t))
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let start = next.len();
                next.push(Vec::new());
                for i in 0..keyed.len() {
                    if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                        next.push(Vec::new());
                    }
                    next.last_mut().unwrap().push(keyed[i].1);
                }
                if next.len() - start > 1 {
                    changed = true;
                }
            }
            part.cells = next;
            part.reindex();
            if !changed {
                return;
            }
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u32> {
        let n = self.n;
        let mut cert = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cert.push(self.w[order[i] * n + order[j]]);
            }
        }
        cert
    }

    fn descend(&mut self, part: Partition, path: &mut Vec<usize>) {
        if part.is_discrete() {
            let order: Vec<usize> = part.cells.iter().map(|c| c[0]).collect();
            let cert = self.certificate(&order);
            match &self.best {
                None => self.best = Some((cert, order)),
                Some((best_cert, best_order)) => match cert.cmp(best_cert) {
                    std::cmp::Ordering::Less => self.best = Some((cert, order)),
                    std::cmp::Ordering::Equal => {
                        // automorphism: order[i] -> best_order[i]
                        let mut gamma = vec![0; self.n];
                        for i in 0..self.n {
                            gamma[order[i]] = best_order[i];
                        }
                        if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                            self.autos.push(gamma);
                        }
                    }
                    std::cmp::Ordering::Greater => {}
                },
            }
            return;
        }
        let target = part
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .expect("non-discrete partition has a non-singleton cell");
        let candidates = part.cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = part.clone();
            child.individualize(v);
            self.refine(&mut child);
            path.push(v);
            self.descend(child, path);
            path.pop();
        }
    }

    /// Whether `v` is mapped from an explored vertex by the group generated by the
    /// known automorphisms that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|g| path.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in gens {
            for (x, &gx) in g.iter().enumerate().take(self.n) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}
