//! Complete lifts at an even-degree vertex and the lift constants `ℓ_m`, `c_m`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::count::{count_forests_sequential, count_trees_sequential, MemoCache};
use crate::graph::{canonical_key, CanonicalKey, GraphError, MultiGraph};

/// Largest degree at `x` for which [`lift_feasible_simple`] runs its exhaustive search.
pub const SIMPLE_LIFT_DEGREE_CAP: usize = 8;
pub const DEFAULT_LIFT_CONSTANT_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: usize, degree: usize },
    #[error("graph is not simple")]
    NotSimple,
    #[error("degree {degree} exceeds the exhaustive search cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("invalid lift plan: {0}")]
    InvalidPlan(String),
    #[error("m = {m} is outside 1..={cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A pairing of the `2m` edge ends at `center`. Each pair `(y1, y2)` has
/// `y1 < y2` and pairs are kept sorted, so equal pairings compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftPlan {
    pub center: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl LiftPlan {
    pub fn new(center: usize, pairs: &[(usize, usize)]) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        LiftPlan { center, pairs }
    }
}

/// Endpoints of the edges at `x`, one entry per edge copy, sorted.
fn edge_ends(g: &MultiGraph, x: usize) -> Vec<usize> {
    let mut ends = Vec::new();
    for (y, t) in g.adjacency()[x].iter().copied() {
        ends.extend(std::iter::repeat_n(y, t as usize));
    }
    ends.sort_unstable();
    ends
}

fn half_degree(g: &MultiGraph, x: usize) -> Result<usize, LiftError> {
    g.check_vertex(x)?;
    let d = g.degree(x);
    if d % 2 == 1 {
        return Err(LiftError::OddDegree { vertex: x, degree: d });
    }
    Ok(d / 2)
}

/// Whether some complete lift at `x` leaves a connected multigraph: no neighbour
/// takes more than `m` of the `2m` edges and `G - x` has at most `m + 1`
/// components. A disconnected `g` never lifts to a connected graph, so it is
/// reported infeasible.
pub fn lift_feasible_multigraph(g: &MultiGraph, x: usize) -> Result<bool, LiftError> {
    let m = half_degree(g, x)?;
    if !g.is_connected() {
        return Ok(false);
    }
    if g.adjacency()[x].iter().any(|&(_, t)| t as usize > m) {
        return Ok(false);
    }
    let rest = g.delete_vertex(x)?;
    Ok(rest.components().len() <= m + 1)
}

/// Whether the complement of `G[N(x)]` has a perfect matching, i.e. a complete lift
/// at `x` that keeps the graph simple exists.
pub fn lift_feasible_simple(g: &MultiGraph, x: usize) -> Result<bool, LiftError> {
    if !g.is_simple() {
        return Err(LiftError::NotSimple);
    }
    let m = half_degree(g, x)?;
    if 2 * m > SIMPLE_LIFT_DEGREE_CAP {
        return Err(LiftError::DegreeCap {
            degree: 2 * m,
            cap: SIMPLE_LIFT_DEGREE_CAP,
        });
    }
    let nbrs = g.neighbors(x);
    let mut used = vec![false; nbrs.len()];
    Ok(complement_matching(g, &nbrs, &mut used))
}

fn complement_matching(g: &MultiGraph, nbrs: &[usize], used: &mut [bool]) -> bool {
    let Some(i) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..nbrs.len() {
        if !used[j] && g.multiplicity(nbrs[i], nbrs[j]) == 0 {
            used[j] = true;
            if complement_matching(g, nbrs, used) {
                used[i] = false;
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
    }
    used[i] = false;
    false
}

/// Applies `plan`: adds `y1y2` for every pair and deletes `x`. Ids above `x` shift
/// down by one.
pub fn complete_lift(g: &MultiGraph, x: usize, plan: &LiftPlan) -> Result<MultiGraph, LiftError> {
    let m = half_degree(g, x)?;
    if plan.center != x {
        return Err(LiftError::InvalidPlan(format!(
            "plan is centred at {} not {x}",
            plan.center
        )));
    }
    if plan.pairs.len() != m {
        return Err(LiftError::InvalidPlan(format!(
            "expected {m} pairs, found {}",
            plan.pairs.len()
        )));
    }
    let mut ends: Vec<usize> = plan.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    ends.sort_unstable();
    if ends != edge_ends(g, x) {
        return Err(LiftError::InvalidPlan(
            "pairs do not use each edge at the centre exactly once".into(),
        ));
    }
    if let Some(&(a, _)) = plan.pairs.iter().find(|&&(a, b)| a == b) {
        return Err(LiftError::InvalidPlan(format!("pair ({a}, {a}) would be a loop")));
    }
    let mut h = g.clone();
    for &(a, b) in &plan.pairs {
        h = h.with_edge(a, b)?;
    }
    Ok(h.delete_vertex(x)?)
}

/// Every distinct pairing of the edges at `x` without loop pairs, in sorted order,
/// with the graph each one produces.
pub fn enumerate_lifts(g: &MultiGraph, x: usize) -> Result<Vec<(LiftPlan, MultiGraph)>, LiftError> {
    half_degree(g, x)?;
    let ends = edge_ends(g, x);
    let mut found = BTreeSet::new();
    let mut used = vec![false; ends.len()];
    let mut current = Vec::new();
    collect_pairings(&ends, &mut used, &mut current, &mut found);
    found
        .into_iter()
        .map(|pairs| {
            let plan = LiftPlan { center: x, pairs };
            let h = complete_lift(g, x, &plan)?;
            Ok((plan, h))
        })
        .collect()
}

fn collect_pairings(
    ends: &[usize],
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    found: &mut BTreeSet<Vec<(usize, usize)>>,
) {
    let Some(i) = used.iter().position(|&u| !u) else {
        let mut pairs = current.clone();
        pairs.sort_unstable();
        found.insert(pairs);
        return;
    };
    used[i] = true;
    let mut tried = BTreeSet::new();
    for j in i + 1..ends.len() {
        if used[j] || ends[j] == ends[i] || !tried.insert(ends[j]) {
            continue;
        }
        used[j] = true;
        current.push((ends[i], ends[j]));
        collect_pairings(ends, used, current, found);
        current.pop();
        used[j] = false;
    }
    used[i] = false;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantKind {
    /// `ℓ_m = min Π(d_i + 1) / F(X)`
    Forests,
    /// `c_m = min Π d_i / τ(X)`
    Trees,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftConstant {
    pub m: usize,
    pub kind: ConstantKind,
    pub value: BigRational,
    /// Degree sequence of the witness, non-increasing.
    pub degrees: Vec<usize>,
    pub witness: MultiGraph,
}

/// Exact minimum of the lift ratio over connected multigraphs with `m` edges and
/// at least two vertices. Ties go to the witness with fewer vertices, then the
/// smaller canonical key.
pub fn lift_constant(m: usize, kind: ConstantKind) -> Result<LiftConstant, LiftError> {
    lift_constant_with_cap(m, kind, DEFAULT_LIFT_CONSTANT_CAP)
}

pub fn lift_constant_with_cap(
    m: usize,
    kind: ConstantKind,
    cap: usize,
) -> Result<LiftConstant, LiftError> {
    if m == 0 || m > cap {
        return Err(LiftError::CapExceeded { m, cap });
    }
    let cache = MemoCache::default();
    let mut best: Option<(BigRational, usize, CanonicalKey, MultiGraph)> = None;
    for k in 2..=m + 1 {
        for (key, x) in connected_multigraphs(k, m) {
            let degrees = x.degrees();
            let ratio = match kind {
                ConstantKind::Forests => {
                    let num: BigInt = degrees.iter().map(|&d| BigInt::from(d + 1)).product();
                    BigRational::new(num, BigInt::from(count_forests_sequential(&x, &cache)))
                }
                ConstantKind::Trees => {
                    let num: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
                    BigRational::new(num, BigInt::from(count_trees_sequential(&x, &cache)))
                }
            };
            let better = match &best {
                None => true,
                Some((r, bk, bkey, _)) => (&ratio, k, &key) < (r, *bk, bkey),
            };
            if better {
                best = Some((ratio, k, key, x));
            }
        }
    }
    let (value, _, _, witness) = best.expect("K2 exists for every m >= 1");
    let mut degrees = witness.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok(LiftConstant {
        m,
        kind,
        value,
        degrees,
        witness,
    })
}

/// Connected loopless multigraphs on exactly `k` vertices with `m` edges, one per
/// isomorphism class, keyed and sorted by canonical key.
pub fn connected_multigraphs(k: usize, m: usize) -> BTreeMap<CanonicalKey, MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect();
    let mut out = BTreeMap::new();
    let mut chosen = Vec::with_capacity(m);
    fn rec(
        start: usize,
        left: usize,
        k: usize,
        pairs: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut BTreeMap<CanonicalKey, MultiGraph>,
    ) {
        if left == 0 {
            let g = MultiGraph::from_edge_list(k, chosen).expect("pairs are valid");
            if g.is_connected() {
                out.entry(canonical_key(&g)).or_insert(g);
            }
            return;
        }
        for i in start..pairs.len() {
            chosen.push(pairs[i]);
            rec(i, left - 1, k, pairs, chosen, out);
            chosen.pop();
        }
    }
    rec(0, m, k, &pairs, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn multigraph_feasibility_examples() {
        // all four edges of x go to one neighbour
        let g = MultiGraph::from_weighted(3, &[(0, 1, 4), (1, 2, 1)]).unwrap();
        assert!(!lift_feasible_multigraph(&g, 0).unwrap());
        assert!(lift_feasible_multigraph(&MultiGraph::cycle(5), 2).unwrap());
        // x joined to four pendant vertices: G - x has 4 > m + 1 components
        let star = MultiGraph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!lift_feasible_multigraph(&star, 0).unwrap());
        assert!(matches!(
            lift_feasible_multigraph(&MultiGraph::complete(4), 0),
            Err(LiftError::OddDegree { vertex: 0, degree: 3 })
        ));
    }

    #[test]
    fn simple_feasibility_examples() {
        let star = MultiGraph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(lift_feasible_simple(&star, 0).unwrap());
        assert!(!lift_feasible_simple(&MultiGraph::complete(5), 0).unwrap());
        assert_eq!(
            lift_feasible_simple(&MultiGraph::cycle(2), 0),
            Err(LiftError::NotSimple)
        );
    }

    #[test]
    fn lifts_of_cycles_and_stars() {
        let lifts = enumerate_lifts(&MultiGraph::cycle(3), 0).unwrap();
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].1, MultiGraph::cycle(2));
        let lifts = enumerate_lifts(&MultiGraph::cycle(4), 0).unwrap();
        assert_eq!(lifts[0].1, MultiGraph::complete(3));
        let star = MultiGraph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let lifts = enumerate_lifts(&star, 0).unwrap();
        assert_eq!(lifts.len(), 3);
        for (_, h) in &lifts {
            assert_eq!(h.edge_count(), 2);
            assert!(h.degrees().iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn repeated_neighbours_collapse_to_one_plan() {
        let g = MultiGraph::from_weighted(3, &[(0, 1, 2), (0, 2, 2)]).unwrap();
        let lifts = enumerate_lifts(&g, 0).unwrap();
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].0.pairs, vec![(1, 2), (1, 2)]);
        assert_eq!(lifts[0].1, MultiGraph::cycle(2));
    }

    #[test]
    fn degree_two_lift_joins_neighbours() {
        // path 1-0-2 plus 1-3-2
        let g = MultiGraph::from_edge_list(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let plan = LiftPlan::new(0, &[(2, 1)]);
        let h = complete_lift(&g, 0, &plan).unwrap();
        assert_eq!(h, MultiGraph::complete(3));
        let bad = LiftPlan::new(0, &[(1, 1)]);
        assert!(matches!(complete_lift(&g, 0, &bad), Err(LiftError::InvalidPlan(_))));
    }

    #[test]
    fn small_constants() {
        let l1 = lift_constant(1, ConstantKind::Forests).unwrap();
        assert_eq!(l1.value, ratio(2, 1));
        let l2 = lift_constant(2, ConstantKind::Forests).unwrap();
        assert_eq!(l2.value, ratio(3, 1));
        assert_eq!(l2.witness, MultiGraph::cycle(2));
        let l3 = lift_constant(3, ConstantKind::Forests).unwrap();
        assert_eq!(l3.value, ratio(27, 7));
        assert_eq!(canonical_key(&l3.witness), canonical_key(&MultiGraph::cycle(3)));
        assert!(lift_constant(6, ConstantKind::Forests).is_err());
        assert!(lift_constant(0, ConstantKind::Trees).is_err());
    }

    #[test]
    fn connected_multigraph_counts() {
        // 2 vertices: only the bundle; 3 vertices with 3 edges: triangle, P3 with
        // one doubled edge
        assert_eq!(connected_multigraphs(2, 3).len(), 1);
        assert_eq!(connected_multigraphs(3, 3).len(), 2);
        assert_eq!(connected_multigraphs(4, 3).len(), 2);
    }
}
