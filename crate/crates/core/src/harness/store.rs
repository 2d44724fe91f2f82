//! Append-only JSONL run records.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::CanonicalKey;

pub const RECORD_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("run store I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode record: {0}")]
    Encode(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Strictly above the bound.
    GE,
    EQ,
    LT,
}

impl From<std::cmp::Ordering> for Verdict {
    fn from(o: std::cmp::Ordering) -> Self {
        match o {
            std::cmp::Ordering::Greater => Verdict::GE,
            std::cmp::Ordering::Equal => Verdict::EQ,
            std::cmp::Ordering::Less => Verdict::LT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub v: u32,
    pub family: String,
    pub n: usize,
    /// Canonical key, hex.
    pub key: String,
    /// Decimal forest count.
    pub forests: String,
    pub bound: String,
    pub verdict: Verdict,
    pub exception: bool,
    /// Seconds since the Unix epoch.
    pub ts: u64,
}

impl SweepRecord {
    pub fn canonical_key(&self) -> Option<CanonicalKey> {
        CanonicalKey::from_hex(&self.key)
    }
}

/// Appends one line. The line is assembled first and written with a single call.
pub fn run_store_append(store: &Path, record: &SweepRecord) -> Result<(), StoreError> {
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(store)?;
    f.write_all(line.as_bytes())?;
    Ok(())
}

/// Every readable record plus the number of lines skipped as corrupt.
#[derive(Debug, Clone, Default)]
pub struct StoreScan {
    pub records: Vec<SweepRecord>,
    pub corrupt: usize,
}

/// Reads all records; a missing file reads as empty. Unparseable lines and records
/// with a different schema version are skipped with a warning.
pub fn run_store_load(store: &Path) -> Result<StoreScan, StoreError> {
    let file = match File::open(store) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(StoreScan::default()),
        Err(e) => return Err(e.into()),
    };
    let mut scan = StoreScan::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<SweepRecord>(&line) {
            Ok(r) if r.v == RECORD_VERSION && r.canonical_key().is_some() => scan.records.push(r),
            Ok(r) => {
                log::warn!("{}:{}: skipping record with version {} or bad key", store.display(), i + 1, r.v);
                scan.corrupt += 1;
            }
            Err(e) => {
                log::warn!("{}:{}: skipping corrupt record: {e}", store.display(), i + 1);
                scan.corrupt += 1;
            }
        }
    }
    Ok(scan)
}

/// Keys already recorded, for skipping on resume.
pub fn run_store_resume(store: &Path) -> Result<HashSet<CanonicalKey>, StoreError> {
    Ok(run_store_load(store)?
        .records
        .iter()
        .filter_map(SweepRecord::canonical_key)
        .collect())
}
