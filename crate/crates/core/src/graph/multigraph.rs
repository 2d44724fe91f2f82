use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Errors raised by multigraph construction and minor operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0} rejected: multigraphs are loopless")]
    LoopRejected(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("no edge between {0} and {1}")]
    EdgeAbsent(usize, usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
}

/// Loopless undirected multigraph on the vertices `0..n`.
///
/// Edges are stored as a sorted map from the unordered pair `(u, v)` with
/// `u < v` to its multiplicity, so iteration order is deterministic.
/// Values are immutable: every minor operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

#[inline]
fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl MultiGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a multigraph from an edge list; repeated pairs accumulate multiplicity.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::empty(n);
        for &(u, v) in pairs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::LoopRejected(u));
            }
            *g.edges.entry(ordered(u, v)).or_insert(0) += 1;
        }
        Ok(g)
    }

    /// Builds a multigraph from `(u, v, multiplicity)` triples. Zero multiplicities are skipped.
    pub fn from_weighted(n: usize, triples: &[(usize, usize, u32)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::empty(n);
        for &(u, v, t) in triples {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::LoopRejected(u));
            }
            if t > 0 {
                *g.edges.entry(ordered(u, v)).or_insert(0) += t;
            }
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = MultiGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v), 1);
            }
        }
        g
    }

    /// Cycle `C_n` for `n >= 3`; `n == 2` gives the 2-cycle multigraph.
    pub fn cycle(n: usize) -> Self {
        let mut g = MultiGraph::empty(n);
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j {
                *g.edges.entry(ordered(i, j)).or_insert(0) += 1;
            }
        }
        g
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = MultiGraph::empty(n);
        for i in 1..n {
            g.edges.insert((i - 1, i), 1);
        }
        g
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = MultiGraph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.edges.insert((u, v), 1);
            }
        }
        g
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Total edge count `|E|`, counting parallel copies.
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&t| t as usize).sum()
    }

    /// Number of distinct adjacent pairs.
    pub fn bundle_count(&self) -> usize {
        self.edges.len()
    }

    /// Multiplicity `ω(u, v)`; zero when not adjacent or `u == v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        if u == v {
            return 0;
        }
        self.edges.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Iterates `((u, v), multiplicity)` with `u < v` in sorted order.
    pub fn bundles(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&k, &t)| (k, t))
    }

    /// Edge list with parallel copies repeated, in sorted order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&(u, v), &t) in &self.edges {
            for _ in 0..t {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&t| t == 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees()[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for (&(u, v), &t) in &self.edges {
            d[u] += t as usize;
            d[v] += t as usize;
        }
        d
    }

    /// `counts[i]` is the number of vertices of degree `i`.
    pub fn degree_counts(&self) -> Vec<usize> {
        let degrees = self.degrees();
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for d in degrees {
            counts[d] += 1;
        }
        counts
    }

    /// Neighbor lists with multiplicities, neighbors ascending.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), &t) in &self.edges {
            adj[u].push((v, t));
            adj[v].push((u, t));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adds one copy of `uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopRejected(u));
        }
        let mut g = self.clone();
        *g.edges.entry(ordered(u, v)).or_insert(0) += 1;
        Ok(g)
    }

    /// Appends `k` isolated vertices with ids `n..n+k`.
    pub fn with_vertices(&self, k: usize) -> Self {
        let mut g = self.clone();
        g.n += k;
        g
    }

    /// Removes one copy of `uv`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let key = ordered(u, v);
        let mut g = self.clone();
        match g.edges.get_mut(&key) {
            Some(t) if u != v => {
                *t -= 1;
                if *t == 0 {
                    g.edges.remove(&key);
                }
                Ok(g)
            }
            _ => Err(GraphError::EdgeAbsent(u, v)),
        }
    }

    /// Removes every copy of `uv`.
    pub fn delete_bundle(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        match g.edges.remove(&ordered(u, v)) {
            Some(_) => Ok(g),
            None => Err(GraphError::EdgeAbsent(u, v)),
        }
    }

    /// Removes `v` and its incident edges; ids above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut edges = BTreeMap::new();
        for (&(a, b), &t) in &self.edges {
            if a != v && b != v {
                edges.insert((shift(a), shift(b)), t);
            }
        }
        Ok(MultiGraph {
            n: self.n - 1,
            edges,
        })
    }

    /// Contracts the edge `uv`: parallel `u–v` copies vanish, other multiplicities
    /// accumulate. The merged vertex takes `min(u, v)`; ids above `max(u, v)` shift down.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.multiplicity(u, v) == 0 {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        Ok(self.identify(&[u, v]))
    }

    /// Identifies every vertex of `set` into one vertex, deleting the loops that arise.
    /// The merged vertex takes the smallest id of the set; remaining ids are re-densified
    /// preserving order.
    pub fn contract_set(&self, set: &[usize]) -> Result<Self, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        for &v in set {
            self.check_vertex(v)?;
        }
        Ok(self.identify(set))
    }

    fn identify(&self, set: &[usize]) -> Self {
        let target = *set.iter().min().expect("nonempty");
        let mut merged = vec![false; self.n];
        for &v in set {
            merged[v] = true;
        }
        // new id of every old vertex
        let mut map = vec![0usize; self.n];
        let mut next = 0;
        for x in 0..self.n {
            if merged[x] && x != target {
                continue;
            }
            map[x] = next;
            next += 1;
        }
        for x in 0..self.n {
            if merged[x] {
                map[x] = map[target];
            }
        }
        self.relabel_into(next, &map)
    }

    /// Applies a vertex map (not necessarily injective) into a graph on `n` vertices,
    /// dropping edges that become loops.
    pub(crate) fn relabel_into(&self, n: usize, map: &[usize]) -> Self {
        let mut edges = BTreeMap::new();
        for (&(a, b), &t) in &self.edges {
            let (x, y) = (map[a], map[b]);
            if x != y {
                *edges.entry(ordered(x, y)).or_insert(0) += t;
            }
        }
        MultiGraph { n, edges }
    }

    /// Graph obtained by renaming vertex `v` to `perm[v]`; `perm` must be a permutation.
    pub fn permute(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        self.relabel_into(self.n, perm)
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let mut edges = BTreeMap::new();
        for (&(a, b), &t) in &self.edges {
            let (x, y) = (map[a], map[b]);
            if x != usize::MAX && y != usize::MAX {
                edges.insert(ordered(x, y), t);
            }
        }
        MultiGraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Spanning subgraph keeping only the given bundles with their multiplicities.
    pub fn spanning_subgraph(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|(&(u, v), _)| keep(u, v))
            .map(|(&k, &t)| (k, t))
            .collect();
        MultiGraph { n: self.n, edges }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> Self {
        let mut g = self.clone();
        for (&(a, b), &t) in &other.edges {
            g.edges.insert((a + self.n, b + self.n), t);
        }
        g.n += other.n;
        g
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &(y, _) in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True for connected graphs; the null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Bridges as `(u, v)` with `u < v`. A bundle of multiplicity at least 2 is never a bridge.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let lowlink = LowLink::run(self);
        let mut out: Vec<(usize, usize)> = lowlink
            .tree_edges
            .iter()
            .filter(|&&(p, c)| self.multiplicity(p, c) == 1 && lowlink.low[c] > lowlink.disc[p])
            .map(|&(p, c)| ordered(p, c))
            .collect();
        out.sort_unstable();
        out
    }

    /// Cut vertices, ascending.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let lowlink = LowLink::run(self);
        let mut is_cut = vec![false; self.n];
        let mut root_children = vec![0usize; self.n];
        for &(p, c) in &lowlink.tree_edges {
            if lowlink.parent[p].is_none() {
                root_children[p] += 1;
            } else if lowlink.low[c] >= lowlink.disc[p] {
                is_cut[p] = true;
            }
        }
        for v in 0..self.n {
            if lowlink.parent[v].is_none() && root_children[v] >= 2 {
                is_cut[v] = true;
            }
        }
        (0..self.n).filter(|&v| is_cut[v]).collect()
    }

    /// Blocks (maximal 2-connected pieces, bundles, or bridges) as ascending vertex
    /// lists. Isolated vertices form no block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX || adj[root].is_empty() {
                continue;
            }
            // iterative DFS: (vertex, parent, next neighbor index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, _) = adj[v][*idx];
                    *idx += 1;
                    if w == parent {
                        // parallel copies to the parent are represented by one bundle entry
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push((v, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut members = Vec::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                members.push(a);
                                members.push(b);
                                if (a, b) == (p, v) {
                                    break;
                                }
                            }
                            members.sort_unstable();
                            members.dedup();
                            blocks.push(members);
                        }
                    }
                }
            }
        }
        blocks.sort();
        blocks
    }
}

/// DFS discovery/low-link data over the simple underlying graph.
struct LowLink {
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<Option<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl LowLink {
    fn run(g: &MultiGraph) -> Self {
        let adj = g.adjacency();
        let n = g.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![None; n];
        let mut tree_edges = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, _) = adj[v][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        parent[w] = Some(v);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        tree_edges.push((v, w));
                        stack.push((w, 0));
                    } else if parent[v] != Some(w) {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent[v] {
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
        LowLink {
            disc,
            low,
            parent,
            tree_edges,
        }
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph(n={}; ", self.n)?;
        let mut first = true;
        for (&(u, v), &t) in &self.edges {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if t == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}x{t}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::from_edge_list(n, pairs).unwrap()
    }

    #[test]
    fn builds_triangle() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(k3.degrees(), vec![2, 2, 2]);
        assert_eq!(k3, MultiGraph::complete(3));
    }

    #[test]
    fn repeated_pairs_accumulate() {
        let two = g(2, &[(0, 1), (1, 0)]);
        assert_eq!(two.multiplicity(0, 1), 2);
        assert_eq!(two.edge_count(), 2);
        assert_eq!(two, MultiGraph::cycle(2));
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert_eq!(
            MultiGraph::from_edge_list(3, &[(0, 0)]),
            Err(GraphError::LoopRejected(0))
        );
        assert!(matches!(
            MultiGraph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn contract_edge_of_k4() {
        let c = MultiGraph::complete(4).contract_edge(0, 1).unwrap();
        assert_eq!(c.vertex_count(), 3);
        let mut mults: Vec<u32> = c.bundles().map(|(_, t)| t).collect();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 2, 2]);
        let mut d = c.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![3, 3, 4]);
    }

    #[test]
    fn contract_two_cycle_and_c4() {
        let c = MultiGraph::cycle(2).contract_edge(0, 1).unwrap();
        assert_eq!(c, MultiGraph::empty(1));
        let c4 = MultiGraph::cycle(4).contract_edge(1, 2).unwrap();
        assert_eq!(c4, MultiGraph::complete(3));
    }

    #[test]
    fn contract_edge_requires_edge() {
        let p = MultiGraph::path(3);
        assert_eq!(p.contract_edge(0, 2), Err(GraphError::EdgeAbsent(0, 2)));
    }

    #[test]
    fn contract_edge_relabels_deterministically() {
        // 0-1-2-3-4 path, contract 3-1? not adjacent; contract 2-3
        let p = MultiGraph::path(5).contract_edge(3, 2).unwrap();
        assert_eq!(p, MultiGraph::path(4));
    }

    #[test]
    fn contract_set_cases() {
        let k4 = MultiGraph::complete(4);
        assert_eq!(k4.contract_set(&[2]).unwrap(), k4);
        assert_eq!(
            k4.contract_set(&[0, 1]).unwrap(),
            k4.contract_edge(0, 1).unwrap()
        );
        // gadget: u=0, v=1, u1=2, u2=3, v1=4, v2=5
        let gadget = g(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        let c = gadget.contract_set(&[2, 3, 4, 5]).unwrap();
        assert_eq!(c, MultiGraph::from_weighted(3, &[(0, 1, 1), (0, 2, 2), (1, 2, 2)]).unwrap());
        assert_eq!(k4.contract_set(&[]), Err(GraphError::EmptyVertexSet));
        assert!(k4.contract_set(&[4]).is_err());
    }

    #[test]
    fn deletions() {
        let single = MultiGraph::cycle(2).delete_edge(0, 1).unwrap();
        assert_eq!(single, MultiGraph::complete(2));
        assert_eq!(
            MultiGraph::complete(4).delete_vertex(2).unwrap(),
            MultiGraph::complete(3)
        );
        let p3 = MultiGraph::complete(3).delete_edge(0, 1).unwrap();
        assert_eq!(p3.degrees(), vec![1, 1, 2]);
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(
            MultiGraph::path(3).delete_edge(0, 2),
            Err(GraphError::EdgeAbsent(0, 2))
        );
    }

    #[test]
    fn structural_queries() {
        assert_eq!(MultiGraph::path(3).bridges(), vec![(0, 1), (1, 2)]);
        let bowtie = g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(bowtie.cut_vertices(), vec![2]);
        assert!(bowtie.bridges().is_empty());
        assert_eq!(bowtie.blocks(), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let counts = MultiGraph::complete(4).degree_counts();
        assert_eq!(counts, vec![0, 0, 0, 4]);
        // bundle of multiplicity 2 is not a bridge
        let t = g(3, &[(0, 1), (0, 1), (1, 2)]);
        assert_eq!(t.bridges(), vec![(1, 2)]);
        assert_eq!(t.cut_vertices(), vec![1]);
        assert_eq!(t.blocks(), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn components_keep_isolated_vertices() {
        let h = g(4, &[(0, 2)]);
        assert_eq!(h.components(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(!h.is_connected());
        assert!(MultiGraph::empty(1).is_connected());
    }

    #[test]
    fn edge_count_after_contraction() {
        let h = g(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (0, 3)]);
        let c = h.contract_edge(0, 1).unwrap();
        assert_eq!(c.edge_count(), h.edge_count() - 2);
    }
}
