//! Named graphs, exhaustive family generation, bound sweeps and run records.

mod catalog;
mod generate;
mod store;
mod sweep;

use serde::Serializer;

use crate::count::Count;

pub use catalog::{
    catalog, catalog_entry, catalog_unchecked, named_graph, CatalogEntry, CatalogError,
    Expectation,
};
pub use generate::{
    enumerate_family, enumerate_family_up_to, DegreeSet, GenerateError, Level,
};
pub use store::{
    run_store_append, run_store_load, run_store_resume, StoreError, StoreScan, SweepRecord,
    Verdict, RECORD_VERSION,
};
pub use sweep::{
    sweep_theorem, Finding, PerVertexMinimum, SweepError, SweepOptions, SweepSummary, Theorem,
};

/// Counts go out as decimal strings so no JSON reader rounds them.
pub fn serialize_count<S: Serializer>(c: &Count, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_str_radix(10))
}

pub fn serialize_opt_count<S: Serializer>(c: &Option<Count>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => serialize_count(c, s),
        None => s.serialize_none(),
    }
}
