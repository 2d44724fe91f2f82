//! Loopless multigraphs, minor operations, canonical labeling and text formats.

mod canon;
mod io;
mod multigraph;

pub use canon::{canonical_form, canonical_key, Canonical, CanonicalKey};
pub use io::{parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6, ParseError};
pub use multigraph::{GraphError, MultiGraph};
