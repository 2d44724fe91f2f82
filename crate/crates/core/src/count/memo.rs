use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use dashmap::DashMap;

use super::Count;
use crate::graph::CanonicalKey;

/// Which Tutte evaluation a cache entry holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// Spanning forests, `T(2,1)`.
    Forests,
    /// Spanning trees, `T(1,1)`.
    Trees,
}

pub const DEFAULT_MEMO_VERTEX_CAP: usize = 16;
pub const DEFAULT_MEMO_ENTRY_CAP: usize = 4_000_000;

/// Environment variable overriding the memo vertex cap.
pub const CACHE_CAP_ENV: &str = "FORESTRY_CACHE_CAP";

/// Isomorphism-keyed cache of exact counts.
///
/// Entries are never overwritten or evicted; once `max_entries` is reached new
/// results are simply not stored. Safe to share between threads: two workers
/// computing the same key insert equal values.
#[derive(Debug)]
pub struct MemoCache {
    forests: DashMap<CanonicalKey, Count>,
    trees: DashMap<CanonicalKey, Count>,
    max_vertices: usize,
    max_entries: usize,
    enabled: bool,
    len: AtomicUsize,
    hits: AtomicU64,
    misses: AtomicU64,
}

/// Hit/miss counters snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

impl Default for MemoCache {
    fn default() -> Self {
        MemoCache::new(DEFAULT_MEMO_VERTEX_CAP, DEFAULT_MEMO_ENTRY_CAP)
    }
}

impl MemoCache {
    pub fn new(max_vertices: usize, max_entries: usize) -> Self {
        MemoCache {
            forests: DashMap::new(),
            trees: DashMap::new(),
            max_vertices,
            max_entries,
            enabled: true,
            len: AtomicUsize::new(0),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// Cache honoring `FORESTRY_CACHE_CAP` for the vertex cap when set and valid.
    pub fn from_env() -> Self {
        let cap = std::env::var(CACHE_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_MEMO_VERTEX_CAP);
        MemoCache::new(cap, DEFAULT_MEMO_ENTRY_CAP)
    }

    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        MemoCache {
            enabled: false,
            ..MemoCache::new(0, 0)
        }
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    /// Whether graphs on `n` vertices are looked up at all.
    pub fn accepts(&self, n: usize) -> bool {
        self.enabled && n <= self.max_vertices
    }

    fn map(&self, kind: CountKind) -> &DashMap<CanonicalKey, Count> {
        match kind {
            CountKind::Forests => &self.forests,
            CountKind::Trees => &self.trees,
        }
    }

    pub fn get(&self, kind: CountKind, key: &CanonicalKey) -> Option<Count> {
        let found = self.map(kind).get(key).map(|v| v.clone());
        if found.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        } else {
            self.misses.fetch_add(1, Ordering::Relaxed);
        }
        found
    }

    pub fn insert(&self, kind: CountKind, key: CanonicalKey, value: Count) {
        if !self.enabled || self.len.load(Ordering::Relaxed) >= self.max_entries {
            return;
        }
        let map = self.map(kind);
        if let dashmap::Entry::Vacant(slot) = map.entry(key) {
            slot.insert(value);
            self.len.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.len.load(Ordering::Relaxed),
        }
    }
}
