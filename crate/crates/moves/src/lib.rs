//! Elementary moves (subdivision, folding, edge deletion), isomorphisms of
//! train tracks, and execution of folding-sequence scripts.
//!
//! Transition matrices have rows indexed by the edges of the target track
//! and columns by the edges of the source track, both in ascending id order,
//! with the ids as labels. Entry `(e', e)` counts how often the image of `e`
//! crosses `e'`.

mod iso;
mod ops;
mod script;

pub use iso::{find_isomorphism, find_isomorphisms, Isomorphism};
pub use ops::{delete_edge, fold, split_fold, subdivide, Move, MoveKind, MoveRecord};
pub use script::{
    run_folding_sequence, run_moves, ClosureSpec, MoveSpec, Script, TrackSource, TrainTrackMapResult,
};

use thiserror::Error;
use traintrack::TrackError;

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid cusp: {0}")]
    InvalidCusp(String),
    #[error("invalid fold: {0}")]
    InvalidFold(String),
    #[error("cannot delete edge: {0}")]
    CannotDelete(String),
    #[error("move {index}: {source}")]
    Positioned {
        index: usize,
        #[source]
        source: Box<MoveError>,
    },
    #[error("closure: {0}")]
    Closure(String),
    #[error("transition matrix is not block triangular: {0}")]
    BlockStructure(String),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Poly(#[from] polyexact::PolyError),
    #[error(transparent)]
    Digraph(#[from] digraph::DigraphError),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}
