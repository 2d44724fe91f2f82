//! Canonical augmentation by vertex addition.
//!
//! The intermediate class is connected simple graphs with maximum degree at most
//! `D`. It is closed under deleting a non-cut vertex, so every member on `k + 1`
//! vertices has a canonical parent on `k`: delete the non-cut vertex with the
//! largest `(degree, sorted neighbour degrees)` invariant, ties broken by the
//! largest canonical position. A child is kept only when its new vertex could
//! have been that vertex, and siblings are deduplicated by canonical key.
//! Members with minimum degree 2 are the family.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{canonical_form, canonical_key, CanonicalKey, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeSet {
    /// Degrees in {2, 3}.
    TwoThree,
    /// Degrees in {2, 3, 4}.
    TwoThreeFour,
}

impl DegreeSet {
    pub fn max_degree(self) -> usize {
        match self {
            DegreeSet::TwoThree => 3,
            DegreeSet::TwoThreeFour => 4,
        }
    }

    /// Largest `n` [`enumerate_family`] accepts.
    pub fn cap(self) -> usize {
        match self {
            DegreeSet::TwoThree => 14,
            DegreeSet::TwoThreeFour => 11,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DegreeSet::TwoThree => "23",
            DegreeSet::TwoThreeFour => "234",
        }
    }

    pub fn admits(self, g: &MultiGraph) -> bool {
        g.degrees().iter().all(|&d| (2..=self.max_degree()).contains(&d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("n = {n} is outside 3..={cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Family members on one vertex count, sorted by canonical key.
#[derive(Debug, Clone)]
pub struct Level {
    pub n: usize,
    pub graphs: Vec<(CanonicalKey, MultiGraph)>,
}

/// One representative per isomorphism class of connected simple graphs on `n`
/// vertices with every degree in `set`, sorted by canonical key.
pub fn enumerate_family(n: usize, set: DegreeSet) -> Result<Vec<MultiGraph>, GenerateError> {
    let mut levels = enumerate_family_up_to(n, set)?;
    let last = levels.pop().expect("at least one level");
    Ok(last.graphs.into_iter().map(|(_, g)| g).collect())
}

/// Family members for every `n` in `3..=n_max`.
pub fn enumerate_family_up_to(n_max: usize, set: DegreeSet) -> Result<Vec<Level>, GenerateError> {
    let cap = set.cap();
    if n_max < 3 || n_max > cap {
        return Err(GenerateError::CapExceeded { n: n_max, cap });
    }
    let d = set.max_degree();
    let mut current = vec![MultiGraph::empty(1)];
    let mut out = Vec::new();
    for k in 1..n_max {
        let remaining = n_max - k - 1;
        let mut children: Vec<(CanonicalKey, MultiGraph)> = current
            .par_iter()
            .flat_map_iter(|p| children_of(p, d, remaining))
            .collect();
        children.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(children.windows(2).all(|w| w[0].0 != w[1].0));
        let n = k + 1;
        if n >= 3 {
            let graphs = children
                .iter()
                .filter(|(_, g)| set.admits(g))
                .cloned()
                .collect();
            out.push(Level { n, graphs });
        }
        current = children.into_iter().map(|(_, g)| g).collect();
        log::debug!("level {n}: {} intermediate graphs", current.len());
    }
    Ok(out)
}

/// Degree shortfall below 2, which later vertices must make up.
fn deficit(deg: &[usize]) -> usize {
    deg.iter().map(|&x| 2usize.saturating_sub(x)).sum()
}

/// Accepted children of `p`, with keys. `remaining` vertices will still be added
/// after this one.
fn children_of(p: &MultiGraph, d: usize, remaining: usize) -> Vec<(CanonicalKey, MultiGraph)> {
    let k = p.vertex_count();
    let deg = p.degrees();
    let open: Vec<usize> = (0..k).filter(|&v| deg[v] < d).collect();
    let parent_key = canonical_key(p);
    let mut seen: BTreeMap<CanonicalKey, MultiGraph> = BTreeMap::new();
    let mut subset = Vec::with_capacity(d);
    subsets(&open, d, 0, &mut subset, &mut |s| {
        // new vertex has degree |s|; it and the open vertices must reach 2
        let mut nd = deg.clone();
        for &v in s {
            nd[v] += 1;
        }
        nd.push(s.len());
        if deficit(&nd) > remaining * d {
            return;
        }
        let mut child = p.with_vertices(1);
        for &v in s {
            child = child.with_edge(v, k).expect("valid");
        }
        if let Some(key) = accept(&child, k, &parent_key) {
            seen.entry(key).or_insert(child);
        }
    });
    seen.into_iter().collect()
}

fn subsets(items: &[usize], max: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if !cur.is_empty() {
        f(cur);
    }
    if cur.len() == max {
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        subsets(items, max, i + 1, cur, f);
        cur.pop();
    }
}

fn invariant(g: &MultiGraph, deg: &[usize], v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| deg[w]).collect();
    nd.sort_unstable();
    (deg[v], nd)
}

/// Key of `child` if its vertex `v` is a valid canonical deletion, else `None`.
fn accept(child: &MultiGraph, v: usize, parent_key: &CanonicalKey) -> Option<CanonicalKey> {
    let deg = child.degrees();
    let cut = child.cut_vertices();
    if cut.contains(&v) {
        return None;
    }
    let mine = invariant(child, &deg, v);
    let mut rivals = Vec::new();
    for w in 0..child.vertex_count() {
        if w == v || cut.contains(&w) {
            continue;
        }
        let inv = invariant(child, &deg, w);
        match inv.cmp(&mine) {
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Equal => rivals.push(w),
            std::cmp::Ordering::Less => {}
        }
    }
    if rivals.is_empty() {
        return Some(canonical_key(child));
    }
    let canon = canonical_form(child);
    let pos = canon.positions();
    let best = rivals
        .iter()
        .copied()
        .chain(std::iter::once(v))
        .max_by_key(|&w| pos[w])
        .expect("nonempty");
    if best == v {
        return Some(canon.key);
    }
    let removed = child.delete_vertex(best).expect("valid");
    (canonical_key(&removed) == *parent_key).then_some(canon.key)
}
