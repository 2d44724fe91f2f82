use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::catalog::catalog_entry;
use super::generate::{enumerate_family_up_to, DegreeSet, GenerateError};
use super::store::{run_store_load, StoreError, SweepRecord, Verdict, RECORD_VERSION};
use crate::bound::{p_bound, per_vertex_root, q_bound, Approx, BoundExpr};
use crate::count::{count_forests_sequential, Count, MemoCache};
use crate::graph::{canonical_key, CanonicalKey, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// `F ≥ p(G)` on connected graphs with degrees in {2, 3}, except `K4`.
    One,
    /// `F ≥ q(G)` on connected graphs with degrees in {2, 3, 4}, except `K5` and `K6-`.
    Two,
}

impl Theorem {
    pub fn degree_set(self) -> DegreeSet {
        match self {
            Theorem::One => DegreeSet::TwoThree,
            Theorem::Two => DegreeSet::TwoThreeFour,
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Theorem::One => 12,
            Theorem::Two => 9,
        }
    }

    pub fn bound(self, g: &MultiGraph) -> BoundExpr {
        match self {
            Theorem::One => p_bound(g),
            Theorem::Two => q_bound(g),
        }
        .expect("generated graphs lie in the family")
    }

    pub fn exception_names(self) -> &'static [&'static str] {
        match self {
            Theorem::One => &["K4"],
            Theorem::Two => &["K5", "K6-"],
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub max_n: usize,
    pub store: Option<PathBuf>,
    pub resume: bool,
}

impl SweepOptions {
    pub fn new(max_n: usize) -> Self {
        SweepOptions {
            max_n,
            store: None,
            resume: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub n: usize,
    pub key: String,
    /// Catalog name when the graph is a named one.
    pub name: Option<String>,
    /// Every catalog name of this graph, in catalog order.
    pub aliases: Vec<String>,
    pub forests: String,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerVertexMinimum {
    pub n: usize,
    pub key: String,
    /// Smallest `F(G)^(1/n)` among non-exceptional graphs at this `n`.
    pub root: Approx,
    /// The bound of that same graph, per vertex.
    pub bound_root: f64,
}

impl PerVertexMinimum {
    pub fn clears_bound(&self) -> bool {
        self.root.value + self.root.err >= self.bound_root - 1e-12
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub theorem: Theorem,
    pub max_n: usize,
    /// `(n, number of graphs)`
    pub per_n: Vec<(usize, usize)>,
    pub total: usize,
    /// Graphs below their bound that are not expected exceptions.
    pub violations: Vec<Finding>,
    /// Expected exceptions that were met, and fell below the bound.
    pub exceptions: Vec<Finding>,
    pub equalities: Vec<Finding>,
    /// Graphs taken from the store instead of recounted.
    pub resumed: usize,
    pub per_vertex: Option<PerVertexMinimum>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("graph {key} falls below its bound")]
    ViolationFound {
        key: String,
        summary: Box<SweepSummary>,
    },
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

struct Evaluated {
    record: SweepRecord,
    fresh: bool,
    root: Option<(Approx, f64)>,
}

/// Checks the bound on every generated graph with `3 <= n <= max_n`.
pub fn sweep_theorem(theorem: Theorem, options: &SweepOptions) -> Result<SweepSummary, SweepError> {
    let set = theorem.degree_set();
    let mut names: HashMap<CanonicalKey, Vec<String>> = HashMap::new();
    for e in crate::harness::catalog_unchecked() {
        names.entry(canonical_key(&e.graph)).or_default().push(e.name.to_string());
    }
    let exceptions: Vec<CanonicalKey> = theorem
        .exception_names()
        .iter()
        .map(|n| canonical_key(&catalog_entry(n).expect("catalog name").graph))
        .collect();

    let mut done: HashMap<String, SweepRecord> = HashMap::new();
    if let (Some(path), true) = (&options.store, options.resume) {
        for r in run_store_load(path)?.records {
            if r.family == set.label() {
                done.insert(r.key.clone(), r);
            }
        }
    }

    let levels = enumerate_family_up_to(options.max_n, set)?;
    let cache = MemoCache::default();

    let (tx, rx) = mpsc::channel::<SweepRecord>();
    let writer = options.store.clone().map(|path| {
        std::thread::spawn(move || -> Result<(), StoreError> {
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            let mut out = BufWriter::new(file);
            for rec in rx {
                let mut line = serde_json::to_string(&rec)?;
                line.push('\n');
                out.write_all(line.as_bytes())?;
            }
            out.flush()?;
            Ok(())
        })
    });

    let mut summary = SweepSummary {
        theorem,
        max_n: options.max_n,
        per_n: Vec::new(),
        total: 0,
        violations: Vec::new(),
        exceptions: Vec::new(),
        equalities: Vec::new(),
        resumed: 0,
        per_vertex: None,
    };

    for level in &levels {
        let n = level.n;
        let at_max = n == options.max_n;
        let evaluated: Vec<Evaluated> = level
            .graphs
            .par_iter()
            .map(|(key, g)| {
                let hex = key.to_hex();
                let exception = exceptions.contains(key);
                let bound = theorem.bound(g);
                if let Some(r) = done.get(&hex) {
                    let root = at_max.then(|| {
                        let f: Count = r.forests.parse().unwrap_or_default();
                        (per_vertex_root(&f, n), bound.per_vertex(n))
                    });
                    return Evaluated { record: r.clone(), fresh: false, root };
                }
                let f = count_forests_sequential(g, &cache);
                let verdict = Verdict::from(bound.compare(&f));
                let root = at_max.then(|| (per_vertex_root(&f, n), bound.per_vertex(n)));
                let record = SweepRecord {
                    v: RECORD_VERSION,
                    family: set.label().to_string(),
                    n,
                    key: hex,
                    forests: f.to_string(),
                    bound: bound.to_string(),
                    verdict,
                    exception,
                    ts: now(),
                };
                Evaluated { record, fresh: true, root }
            })
            .collect();

        for ev in evaluated {
            let r = &ev.record;
            let finding = || {
                let aliases = r
                    .canonical_key()
                    .and_then(|k| names.get(&k))
                    .cloned()
                    .unwrap_or_default();
                Finding {
                    n,
                    key: r.key.clone(),
                    name: aliases.first().cloned(),
                    aliases,
                    forests: r.forests.clone(),
                    bound: r.bound.clone(),
                }
            };
            match (r.verdict, r.exception) {
                (Verdict::LT, true) => summary.exceptions.push(finding()),
                (Verdict::LT, false) => summary.violations.push(finding()),
                (Verdict::EQ, _) => summary.equalities.push(finding()),
                (Verdict::GE, _) => {}
            }
            if let (Some((root, bound_root)), false) = (ev.root, r.exception) {
                let better = summary
                    .per_vertex
                    .as_ref()
                    .is_none_or(|m| root.value < m.root.value);
                if better {
                    summary.per_vertex = Some(PerVertexMinimum {
                        n,
                        key: r.key.clone(),
                        root,
                        bound_root,
                    });
                }
            }
            if ev.fresh {
                if writer.is_some() {
                    // the receiver lives until every sender is dropped
                    tx.send(ev.record).expect("writer alive");
                }
            } else {
                summary.resumed += 1;
            }
        }
        summary.per_n.push((n, level.graphs.len()));
        summary.total += level.graphs.len();
        log::info!("{theorem:?}: n = {n}, {} graphs", level.graphs.len());
    }
    drop(tx);
    if let Some(w) = writer {
        w.join().expect("writer thread")?;
    }
    if let Some(v) = summary.violations.first() {
        return Err(SweepError::ViolationFound {
            key: v.key.clone(),
            summary: Box::new(summary),
        });
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_store_resume;

    #[test]
    fn small_sweep_one() {
        let s = sweep_theorem(Theorem::One, &SweepOptions::new(6)).unwrap();
        assert_eq!(s.exceptions.len(), 1);
        assert_eq!(s.exceptions[0].name.as_deref(), Some("K4"));
        assert!(s.equalities.iter().any(|f| f.name.as_deref() == Some("K4-e")));
        assert!(s.equalities.iter().any(|f| f.aliases.contains(&"D4".to_string())));
        assert!(s.per_vertex.as_ref().unwrap().clears_bound());
    }

    #[test]
    fn only_k3_at_three() {
        let s = sweep_theorem(Theorem::Two, &SweepOptions::new(3)).unwrap();
        assert_eq!(s.per_n, vec![(3, 1)]);
        assert!(s.violations.is_empty() && s.exceptions.is_empty());
    }

    #[test]
    fn resume_skips_recorded_graphs() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t1.jsonl");
        let opts = SweepOptions {
            max_n: 5,
            store: Some(path.clone()),
            resume: false,
        };
        let first = sweep_theorem(Theorem::One, &opts).unwrap();
        assert_eq!(run_store_resume(&path).unwrap().len(), first.total);
        let again = sweep_theorem(Theorem::One, &SweepOptions { resume: true, ..opts }).unwrap();
        assert_eq!(again.resumed, first.total);
        assert_eq!(again.exceptions, first.exceptions);
        assert_eq!(run_store_resume(&path).unwrap().len(), first.total);
    }
}
