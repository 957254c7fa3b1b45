//! Example corpus: folding scripts for the two families, model tracks,
//! matrices, fibered classes and polynomials, with expected values and a
//! verification driver.

pub mod entry;
pub mod families;
mod perm;
mod verify;

pub use entry::{
    default_catalog_dir, load_catalog, load_entries, parse_filter, BoundOutcome, CatalogEntry, Expected,
    MatrixSource, Payload, RadicalExpectation, Surface,
};
pub use perm::permutation_equivalent;
pub use verify::{human_table, load_matrix, matches_decimal, verify_all, verify_entry, Check, EntryReport, Summary};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("script: {0}")]
    Script(String),
    #[error("entry {id}: {why}")]
    Entry { id: String, why: String },
    #[error("bad filter: {0}")]
    Filter(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {why}")]
    Parse { path: String, why: String },
    #[error(transparent)]
    Track(#[from] traintrack::TrackError),
    #[error(transparent)]
    Move(#[from] moves::MoveError),
}
