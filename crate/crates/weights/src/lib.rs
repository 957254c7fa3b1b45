//! Linear algebra on train tracks: the weight space `W` (kernel of the
//! switch map `T_V`), the Thurston form `ω`, radical elements of boundary
//! components, the radical of `ω|W`, and the reciprocity certificate of a
//! closed folding sequence.
//!
//! Edge vectors are indexed by edge ids in ascending order and vertex
//! vectors by vertex ids in ascending order.

mod certificate;
mod covering;
mod form;
mod space;

pub use certificate::{reciprocity_certificate, CertificateReport};
pub use covering::CoveringOperators;
pub use form::{
    ambient_radical, radical, radical_element, radical_elements, radical_span_report, thurston_form,
    BilinearForm, RadicalElement, RadicalSpanReport,
};
pub use space::{check_vertex_signs, switch_matrix, vertex_sign_matrix, weight_space, WeightSpace};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error(transparent)]
    Track(#[from] traintrack::TrackError),
    #[error(transparent)]
    Poly(#[from] polyexact::PolyError),
}
