use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::count::{count_forests_sequential, quotient, Count, ExtensionError, MemoCache};
use crate::graph::{GraphError, MultiGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("gadgets declare {left} and {right} attachment slots")]
    AttachmentMismatch { left: usize, right: usize },
    #[error("slot {slot} names vertex {vertex}, outside a gadget on {n} vertices")]
    SlotOutOfRange { slot: usize, vertex: usize, n: usize },
    #[error("separation constraint names slot {0}, which does not exist")]
    UnknownSlot(usize),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A multigraph together with its ordered attachment slots. Several slots may
/// name the same vertex; they are then always in the same block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub graph: MultiGraph,
    pub slots: Vec<usize>,
}

impl Gadget {
    pub fn new(graph: MultiGraph, slots: Vec<usize>) -> Result<Self, RatioError> {
        let n = graph.vertex_count();
        for (slot, &vertex) in slots.iter().enumerate() {
            if vertex >= n {
                return Err(RatioError::SlotOutOfRange { slot, vertex, n });
            }
        }
        Ok(Gadget { graph, slots })
    }

    /// `F(H / P)` where each block of slots is identified; blocks touching a common
    /// vertex are merged first.
    pub fn extension_count(&self, partition: &[Vec<usize>], cache: &MemoCache) -> Result<Count, RatioError> {
        let n = self.graph.vertex_count();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        let mut parent: Vec<usize> = (0..partition.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (b, block) in partition.iter().enumerate() {
            for &slot in block {
                let v = *self.slots.get(slot).ok_or(RatioError::UnknownSlot(slot))?;
                match owner[v] {
                    None => owner[v] = Some(b),
                    Some(other) => {
                        let (ra, rb) = (find(&mut parent, other), find(&mut parent, b));
                        parent[ra] = rb;
                    }
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); partition.len()];
        for (v, o) in owner.iter().enumerate() {
            if let Some(b) = o {
                let r = find(&mut parent, *b);
                blocks[r].push(v);
            }
        }
        blocks.retain(|b| !b.is_empty());
        let q = quotient(&self.graph, &blocks)?;
        Ok(count_forests_sequential(&q, cache))
    }
}

/// All set partitions of `0..k` as sorted block lists, in restricted-growth order.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; k];
    fn rec(i: usize, max: usize, labels: &mut [usize], out: &mut Vec<Vec<Vec<usize>>>) {
        if i == labels.len() {
            let mut blocks = vec![Vec::new(); max];
            for (x, &l) in labels.iter().enumerate() {
                blocks[l].push(x);
            }
            out.push(blocks);
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, max.max(l + 1), labels, out);
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    /// Blocks of slot indices.
    pub partition: Vec<Vec<usize>>,
    pub numerator: Count,
    pub denominator: Count,
    /// `None` when the denominator is zero.
    pub ratio: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    pub min: Option<BigRational>,
    pub argmin: Option<usize>,
    /// Rows with zero denominator and positive numerator.
    pub unbounded: Vec<usize>,
}

impl RatioReport {
    /// Distinct `(numerator, denominator)` pairs, in first-seen order.
    pub fn distinct_pairs(&self) -> Vec<(Count, Count)> {
        let mut out: Vec<(Count, Count)> = Vec::new();
        for r in &self.rows {
            let p = (r.numerator.clone(), r.denominator.clone());
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

pub fn min_ratio_check(a: &Gadget, b: &Gadget) -> Result<RatioReport, RatioError> {
    min_ratio_check_separated(a, b, &[])
}

/// Like [`min_ratio_check`], restricted to partitions that put each listed slot
/// pair in different blocks.
pub fn min_ratio_check_separated(
    a: &Gadget,
    b: &Gadget,
    separate: &[(usize, usize)],
) -> Result<RatioReport, RatioError> {
    let k = a.slots.len();
    if k != b.slots.len() {
        return Err(RatioError::AttachmentMismatch {
            left: k,
            right: b.slots.len(),
        });
    }
    if let Some(&(s, _)) = separate.iter().find(|&&(s, t)| s >= k || t >= k) {
        return Err(RatioError::UnknownSlot(s));
    }
    let cache = MemoCache::default();
    let mut rows = Vec::new();
    for partition in set_partitions(k) {
        let same_block = |s: usize, t: usize| partition.iter().any(|bl| bl.contains(&s) && bl.contains(&t));
        if separate.iter().any(|&(s, t)| same_block(s, t)) {
            continue;
        }
        let numerator = a.extension_count(&partition, &cache)?;
        let denominator = b.extension_count(&partition, &cache)?;
        let ratio = (!denominator.is_zero()).then(|| {
            BigRational::new(
                BigInt::from(numerator.clone()),
                BigInt::from(denominator.clone()),
            )
        });
        rows.push(RatioRow {
            partition,
            numerator,
            denominator,
            ratio,
        });
    }
    let mut min: Option<BigRational> = None;
    let mut argmin = None;
    let mut unbounded = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        match &r.ratio {
            Some(q) => {
                if min.as_ref().is_none_or(|m| q < m) {
                    min = Some(q.clone());
                    argmin = Some(i);
                }
            }
            None if !r.numerator.is_zero() => unbounded.push(i),
            None => {}
        }
    }
    Ok(RatioReport {
        rows,
        min,
        argmin,
        unbounded,
    })
}

/// Edges `uv, uu1, uu2, vv1, vv2` against the two edges `u1u2, v1v2`, both attached
/// at `u1, u2, v1, v2`.
pub fn two_bundle_gadgets() -> (Gadget, Gadget) {
    let (u, v, u1, u2, v1, v2) = (0, 1, 2, 3, 4, 5);
    let g1 = MultiGraph::from_edge_list(6, &[(u, v), (u, u1), (u, u2), (v, v1), (v, v2)])
        .expect("valid");
    let g2 = MultiGraph::from_edge_list(4, &[(0, 1), (2, 3)]).expect("valid");
    (
        Gadget { graph: g1, slots: vec![u1, u2, v1, v2] },
        Gadget { graph: g2, slots: vec![0, 1, 2, 3] },
    )
}

/// Diamond `ux, uy, vx, vy, xy` plus `w` joined to `x` and `y`, attached at
/// `u, v, w`, against a triangle on the same three slots.
pub fn pendant_diamond_gadgets() -> (Gadget, Gadget) {
    let (u, v, w, x, y) = (0, 1, 2, 3, 4);
    let d5 = MultiGraph::from_edge_list(
        5,
        &[(u, x), (u, y), (v, x), (v, y), (w, x), (w, y), (x, y)],
    )
    .expect("valid");
    (
        Gadget { graph: d5, slots: vec![u, v, w] },
        Gadget { graph: MultiGraph::complete(3), slots: vec![0, 1, 2] },
    )
}

/// Diamond `ux, uy, vx, vy, xy` attached at `u, v, x, y` against the triangle
/// `u, v, z` where `z` stands for both `x` and `y`. The returned pair of slots
/// (`x`, `y`) must be kept apart.
pub fn diamond_gadgets() -> (Gadget, Gadget, Vec<(usize, usize)>) {
    let (u, v, x, y) = (0, 1, 2, 3);
    let d4 = MultiGraph::from_edge_list(4, &[(u, x), (u, y), (v, x), (v, y), (x, y)])
        .expect("valid");
    (
        Gadget { graph: d4, slots: vec![u, v, x, y] },
        Gadget { graph: MultiGraph::complete(3), slots: vec![0, 1, 2, 2] },
        vec![(2, 3)],
    )
}

/// Star at `x` with leaves `a, b, c, d` compared with the three perfect matchings
/// of `{a, b, c, d}`. Each row: partition over slots `a = 0 .. d = 3`, then
/// `(star, {ab, cd}, {ac, bd}, {ad, bc})` extension counts.
pub const STAR_SPLIT_EXPECTED: [(&[&[usize]], [u64; 4]); 15] = [
    (&[&[0], &[1], &[2], &[3]], [16, 4, 4, 4]),
    (&[&[0, 1], &[2], &[3]], [12, 2, 4, 4]),
    (&[&[0, 2], &[1], &[3]], [12, 4, 2, 4]),
    (&[&[0, 3], &[1], &[2]], [12, 4, 4, 2]),
    (&[&[1, 2], &[0], &[3]], [12, 4, 4, 2]),
    (&[&[1, 3], &[0], &[2]], [12, 4, 2, 4]),
    (&[&[2, 3], &[0], &[1]], [12, 2, 4, 4]),
    (&[&[0, 1], &[2, 3]], [9, 1, 3, 3]),
    (&[&[0, 2], &[1, 3]], [9, 3, 1, 3]),
    (&[&[0, 3], &[1, 2]], [9, 3, 3, 1]),
    (&[&[0], &[1, 2, 3]], [8, 2, 2, 2]),
    (&[&[1], &[0, 2, 3]], [8, 2, 2, 2]),
    (&[&[2], &[0, 1, 3]], [8, 2, 2, 2]),
    (&[&[3], &[0, 1, 2]], [8, 2, 2, 2]),
    (&[&[0, 1, 2, 3]], [5, 1, 1, 1]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct StarSplitRow {
    pub partition: Vec<Vec<usize>>,
    /// Star count followed by the three matching counts.
    pub counts: [Count; 4],
    pub expected: [u64; 4],
    pub matches: bool,
    /// `5 λ ≥ 6 (λ1 + λ2 + λ3)`
    pub dominates: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarSplitReport {
    pub rows: Vec<StarSplitRow>,
}

impl StarSplitReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn all_dominate(&self) -> bool {
        self.rows.iter().all(|r| r.dominates)
    }
}

pub fn star_split_check() -> StarSplitReport {
    let cache = MemoCache::default();
    let star = Gadget {
        graph: MultiGraph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).expect("valid"),
        slots: vec![1, 2, 3, 4],
    };
    let matchings: Vec<Gadget> = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
        .iter()
        .map(|m| Gadget {
            graph: MultiGraph::from_edge_list(4, m).expect("valid"),
            slots: vec![0, 1, 2, 3],
        })
        .collect();
    let rows = STAR_SPLIT_EXPECTED
        .iter()
        .map(|(blocks, expected)| {
            let partition: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
            let ext = |g: &Gadget| g.extension_count(&partition, &cache).expect("valid slots");
            let counts = [
                ext(&star),
                ext(&matchings[0]),
                ext(&matchings[1]),
                ext(&matchings[2]),
            ];
            let matches = counts
                .iter()
                .zip(expected.iter())
                .all(|(c, &e)| *c == Count::from(e));
            let sum: Count = counts[1..].iter().sum();
            let dominates = &counts[0] * 5u32 >= sum * 6u32;
            StarSplitRow {
                partition,
                counts,
                expected: *expected,
                matches,
                dominates,
            }
        })
        .collect();
    StarSplitReport { rows }
}
