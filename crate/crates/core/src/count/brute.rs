//! Reference counters straight from the definitions, used as oracles.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::Count;
use crate::graph::MultiGraph;

pub const DEFAULT_BRUTE_FORCE_EDGE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("graph has {edges} edges, above the brute-force cap of {cap}")]
    TooLarge { edges: usize, cap: usize },
}

/// Union–find with rollback, so the subset search can undo unions.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false (and records nothing) when `a` and `b` are already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    fn rollback(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
        }
    }
}

/// Visits every acyclic subset of the edge copies and reports the union–find state
/// of each completed forest.
fn for_each_forest(g: &MultiGraph, mut visit: impl FnMut(&Dsu, usize)) {
    let edges = g.edge_list();
    let mut dsu = Dsu::new(g.vertex_count());
    fn rec(
        i: usize,
        used: usize,
        edges: &[(usize, usize)],
        dsu: &mut Dsu,
        visit: &mut dyn FnMut(&Dsu, usize),
    ) {
        if i == edges.len() {
            visit(dsu, used);
            return;
        }
        rec(i + 1, used, edges, dsu, visit);
        let (u, v) = edges[i];
        if dsu.union(u, v) {
            rec(i + 1, used + 1, edges, dsu, visit);
            dsu.rollback();
        }
    }
    rec(0, 0, &edges, &mut dsu, &mut visit);
}

fn check_cap(g: &MultiGraph, cap: usize) -> Result<(), CountError> {
    let edges = g.edge_count();
    if edges > cap {
        return Err(CountError::TooLarge { edges, cap });
    }
    Ok(())
}

/// Number of edge subsets (parallel copies distinguishable) containing no cycle.
pub fn count_forests_bruteforce(g: &MultiGraph) -> Result<Count, CountError> {
    count_forests_bruteforce_with_cap(g, DEFAULT_BRUTE_FORCE_EDGE_CAP)
}

pub fn count_forests_bruteforce_with_cap(g: &MultiGraph, cap: usize) -> Result<Count, CountError> {
    check_cap(g, cap)?;
    let mut total: u64 = 0;
    for_each_forest(g, |_, _| total += 1);
    Ok(Count::from(total))
}

/// Number of acyclic edge subsets with `n - 1` edges.
pub fn count_trees_bruteforce(g: &MultiGraph) -> Result<Count, CountError> {
    check_cap(g, DEFAULT_BRUTE_FORCE_EDGE_CAP)?;
    let target = g.vertex_count().saturating_sub(1);
    let mut total: u64 = 0;
    for_each_forest(g, |_, used| {
        if used == target {
            total += 1;
        }
    });
    Ok(Count::from(total))
}

/// Forests in which every vertex of `set` lies in a different component.
pub fn count_forests_separating_bruteforce(
    g: &MultiGraph,
    set: &[usize],
) -> Result<Count, CountError> {
    check_cap(g, DEFAULT_BRUTE_FORCE_EDGE_CAP)?;
    let mut total: u64 = 0;
    for_each_forest(g, |dsu, _| {
        let mut roots: Vec<usize> = set.iter().map(|&v| dsu.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() == set.len() {
            total += 1;
        }
    });
    Ok(Count::from(total))
}

/// Spanning-tree count by the matrix-tree theorem: the determinant of the reduced
/// Laplacian, computed exactly with fraction-free Bareiss elimination.
pub fn count_trees_kirchhoff(g: &MultiGraph) -> Count {
    let n = g.vertex_count();
    if n <= 1 {
        return Count::from(1u32);
    }
    let size = n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for ((u, v), t) in g.bundles() {
        let t = BigInt::from(t);
        for &(a, b) in &[(u, v), (v, u)] {
            if a < size {
                m[a][a] += &t;
                if b < size {
                    m[a][b] -= &t;
                }
            }
        }
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Count::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = val;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if sign < 0 { -prev } else { prev };
    debug_assert!(!det.is_negative());
    det.magnitude().clone()
}
