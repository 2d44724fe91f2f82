use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::bound::{p_bound, q_bound, BoundExpr};
use crate::count::{count_forests, Count, MemoCache};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog graph {0:?}")]
    UnknownName(String),
    #[error("{name}: {what} is {found}, expected {expected}")]
    CatalogMismatch {
        name: String,
        what: &'static str,
        found: String,
        expected: String,
    },
}

/// A bound value the graph is known to have, and how the forest count compares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub bound: BoundExpr,
    pub verdict: Ordering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub graph: MultiGraph,
    pub forests: u64,
    /// `(n2, n3, n4)`
    pub degrees: (usize, usize, usize),
    pub p: Option<Expectation>,
    pub q: Option<Expectation>,
}

/// Graph on vertices named by whitespace-separated `x-y` tokens; names get ids in
/// order of first appearance.
pub fn named_graph(text: &str) -> MultiGraph {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for tok in text.split_whitespace() {
        let (a, b) = tok.split_once('-').expect("edge token x-y");
        let mut id = |s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        };
        pairs.push((id(a), id(b)));
    }
    MultiGraph::from_edge_list(ids.len(), &pairs).expect("valid catalog edges")
}

const K4: &str = "a-b a-c a-d b-c b-d c-d";

fn figure_graph(extra: &str) -> MultiGraph {
    named_graph(&format!("{K4} {extra}"))
}

fn subdivide(g: &MultiGraph, u: usize, v: usize) -> MultiGraph {
    let w = g.vertex_count();
    g.delete_edge(u, v)
        .and_then(|h| h.with_vertices(1).with_edge(u, w))
        .and_then(|h| h.with_edge(w, v))
        .expect("edge present")
}

fn k6_minus() -> MultiGraph {
    let mut g = MultiGraph::complete(6);
    for (u, v) in [(0, 1), (2, 3), (4, 5)] {
        g = g.delete_edge(u, v).expect("edge present");
    }
    g
}

fn join(g: &MultiGraph, targets: &[usize]) -> MultiGraph {
    let w = g.vertex_count();
    let mut h = g.with_vertices(1);
    for &t in targets {
        h = h.with_edge(w, t).expect("valid");
    }
    h
}

/// `2^(x/5) 198^(y/5)` in tenths.
fn q_expr(x: i64, y: i64) -> BoundExpr {
    BoundExpr {
        a: 2 * x,
        b: 0,
        c: 2 * y,
        s: 10,
    }
}

/// `2^(x/2) 3^(y/2)` in quarters.
fn p_expr(x: i64, y: i64) -> BoundExpr {
    BoundExpr {
        a: 2 * x,
        b: 2 * y,
        c: 0,
        s: 4,
    }
}

fn exp(bound: BoundExpr, verdict: Ordering) -> Option<Expectation> {
    Some(Expectation { bound, verdict })
}

use Ordering::{Equal, Greater, Less};

/// Every named graph, without recounting.
pub fn catalog_unchecked() -> Vec<CatalogEntry> {
    let k4 = MultiGraph::complete(4);
    let diamond = k4.delete_edge(0, 1).expect("edge");
    let k5 = MultiGraph::complete(5);
    let y5 = join(&k4, &[0, 1]);
    let y6 = join(&y5, &[2, 3]);
    let prism = named_graph("a-b b-c c-a x-y y-z z-x a-x b-y c-z");
    let z_base = "a-b b-c c-d d-e e-f x-y y-z a-x b-y c-z a-c d-f b-e a-f x-z";
    let entry = |name, graph, forests, degrees, p, q| CatalogEntry {
        name,
        graph,
        forests,
        degrees,
        p,
        q,
    };
    vec![
        entry("K3", MultiGraph::complete(3), 7, (3, 0, 0), exp(p_expr(4, 1), Greater), exp(q_expr(6, 1), Greater)),
        entry("K4", k4.clone(), 38, (0, 4, 0), exp(p_expr(6, 3), Less), exp(q_expr(3, 3), Greater)),
        entry("K4-e", diamond.clone(), 24, (2, 2, 0), exp(p_expr(6, 2), Equal), None),
        entry("K33", MultiGraph::complete_bipartite(3, 3), 328, (0, 6, 0), exp(p_expr(10, 4), Greater), None),
        entry("R1", prism, 314, (0, 6, 0), exp(p_expr(10, 4), Greater), None),
        entry("R2", subdivide(&k4, 0, 1), 86, (1, 4, 0), exp(p_expr(8, 3), Greater), None),
        entry("K5", k5.clone(), 291, (0, 0, 5), None, exp(q_expr(-4, 6), Less)),
        entry("K5-e", k5.delete_edge(0, 1).expect("edge"), 198, (0, 2, 3), None, None),
        entry("K6-", k6_minus(), 1083, (0, 0, 6), None, exp(q_expr(-3, 7), Less)),
        entry("X6", subdivide(&k5, 0, 1), 687, (1, 0, 5), None, exp(q_expr(1, 6), Greater)),
        entry("X7", subdivide(&k6_minus(), 0, 2), 2527, (1, 0, 6), None, exp(q_expr(2, 7), Greater)),
        entry("Y5", y5.clone(), 128, (1, 2, 2), None, exp(q_expr(4, 4), Greater)),
        entry("Y5'", join(&k4, &[0, 1, 2]), 198, (0, 2, 3), None, exp(q_expr(0, 5), Equal)),
        entry("Y6", y6.clone(), 431, (2, 0, 4), None, exp(q_expr(5, 5), Greater)),
        entry("Y6'", y6.with_edge(4, 5).expect("valid"), 722, (0, 2, 4), None, exp(q_expr(1, 6), Greater)),
        entry("D4", diamond.clone(), 24, (2, 2, 0), None, None),
        entry("D5", join(&diamond, &[2, 3]), 81, (3, 0, 2), None, None),
        entry(
            "H1",
            figure_graph("u-a u-z u-v u-w v-d v-w v-z w-z w-c z-b"),
            14381,
            (0, 0, 8),
            None,
            exp(q_expr(-1, 9), Greater),
        ),
        entry(
            "H2",
            figure_graph("e-u e-v u-a u-z u-v v-d v-w w-z w-c z-b e-w e-z"),
            52485,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
        entry(
            "H3",
            figure_graph("u-a u-b u-w v-d v-c v-w u-v"),
            2457,
            (1, 0, 6),
            None,
            exp(q_expr(2, 7), Greater),
        ),
        entry(
            "H4",
            named_graph("x-u x-v x-w x-y y-u y-w y-v p-u p-w p-v p-q q-u q-w q-v"),
            4061,
            (0, 0, 7),
            None,
            exp(q_expr(-2, 8), Greater),
        ),
        entry(
            "H5",
            named_graph("x-u x-v x-w x-y y-u y-w y-v z-u t-w z-v z-t t-u s-w s-v z-s t-s"),
            14763,
            (0, 0, 8),
            None,
            exp(q_expr(-1, 9), Greater),
        ),
        entry(
            "H6",
            named_graph("U-Z U-W U-Y Z-A Z-B Z-Y A-B A-V W-V V-B W-Y Y-B U-V A-W"),
            4019,
            (0, 0, 7),
            None,
            exp(q_expr(-2, 8), Greater),
        ),
        entry(
            "H7",
            named_graph("u-z u-v u-w z-w v-a v-e e-a w-a w-b a-b b-c b-d e-d z-c c-d u-d v-c e-z"),
            57631,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
        entry(
            "H8",
            named_graph("u-z u-v u-w z-w v-a v-e d-a w-a w-b a-b b-c b-e e-d z-c c-d u-d v-c e-z"),
            58975,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
        entry(
            "Z1",
            named_graph(&format!("{z_base} d-x e-y f-z")),
            57631,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
        entry(
            "Z2",
            named_graph(&format!("{z_base} d-y e-x f-z")),
            58417,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
        entry(
            "Z3",
            named_graph(&format!("{z_base} d-z e-y f-x")),
            56101,
            (0, 0, 9),
            None,
            exp(q_expr(0, 10), Greater),
        ),
    ]
}

fn mismatch(name: &str, what: &'static str, found: impl ToString, expected: impl ToString) -> CatalogError {
    CatalogError::CatalogMismatch {
        name: name.to_string(),
        what,
        found: found.to_string(),
        expected: expected.to_string(),
    }
}

fn same_value(x: &BoundExpr, y: &BoundExpr) -> bool {
    // compare a^(1/s) forms after scaling to a common denominator
    let (sx, sy) = (x.s as i64, y.s as i64);
    (x.a * sy, x.b * sy, x.c * sy) == (y.a * sx, y.b * sx, y.c * sx)
}

impl CatalogEntry {
    /// Recounts forests and re-derives degree counts and bounds; the first
    /// disagreement is returned.
    pub fn verify(&self, cache: &MemoCache) -> Result<Count, CatalogError> {
        let dc = self.graph.degree_counts();
        let at = |d: usize| dc.get(d).copied().unwrap_or(0);
        let found = (at(2), at(3), at(4));
        let other: usize = dc.iter().enumerate().filter(|(d, _)| !(2..=4).contains(d)).map(|(_, c)| c).sum();
        if found != self.degrees || other != 0 {
            return Err(mismatch(self.name, "degree counts", format!("{dc:?}"), format!("{:?}", self.degrees)));
        }
        let f = count_forests(&self.graph, cache);
        if f != Count::from(self.forests) {
            return Err(mismatch(self.name, "forest count", &f, self.forests));
        }
        let checks: [(&'static str, &Option<Expectation>, Option<BoundExpr>); 2] = [
            ("p bound", &self.p, p_bound(&self.graph).ok()),
            ("q bound", &self.q, q_bound(&self.graph).ok()),
        ];
        for (what, want, got) in checks {
            let Some(want) = want else { continue };
            let Some(got) = got else {
                return Err(mismatch(self.name, what, "undefined", want.bound));
            };
            if !same_value(&got, &want.bound) {
                return Err(mismatch(self.name, what, got, want.bound));
            }
            let verdict = got.compare(&f);
            if verdict != want.verdict {
                return Err(mismatch(self.name, "verdict", format!("{verdict:?}"), format!("{:?}", want.verdict)));
            }
        }
        Ok(f)
    }
}

/// The catalog with every entry recounted; fails on the first disagreement.
pub fn catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    let cache = MemoCache::default();
    let entries = catalog_unchecked();
    for e in &entries {
        e.verify(&cache)?;
    }
    Ok(entries)
}

/// Case-insensitive lookup by name.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    catalog_unchecked()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}
