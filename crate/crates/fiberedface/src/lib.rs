//! Fibered-face computations: the Alexander norm of an integral class, the
//! specialization of the Teichmüller polynomial along it, and the lower
//! bounds on normalized dilatation.

mod bound;
mod data;
mod report;

pub use bound::{bound_check, sharp_bound_poly, BoundVerdict, Relation, SharpKind};
pub use data::{alexander_norm, FiberedFaceData};
pub use report::{class_report, class_report_unchecked, ClassReport};

use polyexact::PolyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FaceError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("class {class:?} is outside the fibered cone")]
    OutsideCone { class: Vec<i64> },
    #[error("class {class:?} is degenerate: {poly} has no root greater than 1")]
    DegenerateClass { class: Vec<i64>, poly: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
