use num_rational::BigRational;
use num_traits::Zero;
use polyexact::linalg::{self, QVec};
use polyexact::IntPoly;
use serde::Serialize;

use moves::TrainTrackMapResult;

use crate::form::{radical, thurston_form};
use crate::space::check_vertex_signs;

/// Verdicts of the reciprocity argument for a closed folding sequence,
/// each an exact check.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub edge_dim: usize,
    pub weight_dim: usize,
    pub radical_dim: usize,
    pub quotient_dim: usize,
    /// `P T_V = T_V f_*`.
    pub vertex_signs_commute: bool,
    /// `f_*` maps `W` into `W`.
    pub preserves_weights: bool,
    /// `ω(f u, f v) = ω(u, v)` on `W`.
    pub preserves_form: bool,
    pub radical_invariant: bool,
    pub radical_char_poly: Option<IntPoly>,
    pub radical_reciprocal: bool,
    /// `ω` descends to a nondegenerate form on `W / rad`.
    pub quotient_nondegenerate: bool,
    pub quotient_symplectic: bool,
    pub quotient_char_poly: Option<IntPoly>,
    pub quotient_reciprocal: bool,
    pub full_char_poly: IntPoly,
    pub full_reciprocal: bool,
    pub real_char_poly: IntPoly,
    pub real_reciprocal: bool,
    pub passed: bool,
}

fn reciprocal(p: &Option<IntPoly>) -> bool {
    p.as_ref().is_some_and(|p| p.has_inversion_closed_roots().unwrap_or(false))
}

/// Matrix of `v ↦ f v` on `span(basis)` in `basis` coordinates, if the span
/// is invariant. Column `j` holds the coordinates of `f basis[j]`.
fn restrict(f: &[QVec], basis: &[QVec]) -> Option<Vec<QVec>> {
    let cols: Vec<QVec> =
        basis.iter().map(|b| linalg::coordinates(basis, &linalg::mat_vec(f, b))).collect::<Option<_>>()?;
    Some(linalg::transpose(&cols, basis.len()))
}

pub fn reciprocity_certificate(r: &TrainTrackMapResult) -> CertificateReport {
    let t = &r.start;
    let n = t.edge_count();
    let form = thurston_form(t);
    let g = linalg::from_int_matrix(&form.matrix);
    let f = linalg::from_int_matrix(&r.transition);
    let w = &form.space.basis;

    let images: Vec<QVec> = w.iter().map(|b| linalg::mat_vec(&f, b)).collect();
    let preserves_weights = images.iter().all(|v| form.space.contains(v));
    let preserves_form = linalg::gram(&g, &images) == form.restricted;

    let rad = radical(t);
    let rad_map = restrict(&f, &rad);
    let radical_invariant = rad_map.is_some();
    let radical_char_poly = rad_map.as_ref().and_then(|m| linalg::char_poly_rational(m));

    // complement of rad inside W, greedily from the W basis
    let mut quotient: Vec<QVec> = Vec::new();
    let mut acc = rad.clone();
    for b in w {
        let mut trial = acc.clone();
        trial.push(b.clone());
        if linalg::rank(&trial, n) > acc.len() {
            acc = trial;
            quotient.push(b.clone());
        }
    }
    let qgram = linalg::gram(&g, &quotient);
    let quotient_nondegenerate = linalg::rank(&qgram, quotient.len()) == quotient.len();
    let mut combined = quotient.clone();
    combined.extend(rad.iter().cloned());
    let quotient_map: Option<Vec<QVec>> = quotient
        .iter()
        .map(|b| {
            let c = linalg::coordinates(&combined, &linalg::mat_vec(&f, b))?;
            Some(c[..quotient.len()].to_vec())
        })
        .collect::<Option<Vec<QVec>>>()
        .map(|cols| linalg::transpose(&cols, quotient.len()));
    let quotient_symplectic = quotient_nondegenerate
        && quotient_map.as_ref().is_some_and(|m| {
            // images modulo rad pair the same way
            let imgs: Vec<QVec> = (0..quotient.len())
                .map(|j| {
                    let mut v = vec![BigRational::zero(); n];
                    for (i, q) in quotient.iter().enumerate() {
                        for (x, y) in v.iter_mut().zip(q) {
                            *x += &m[i][j] * y;
                        }
                    }
                    v
                })
                .collect();
            linalg::gram(&g, &imgs) == qgram
        });
    let quotient_char_poly = quotient_map.as_ref().and_then(|m| linalg::char_poly_rational(m));

    let full_char_poly = r.transition.char_poly().expect("square transition matrix");
    let full_reciprocal = full_char_poly.has_inversion_closed_roots().unwrap_or(false);
    let real_reciprocal = r.real_char_poly.has_inversion_closed_roots().unwrap_or(false);
    let vertex_signs_commute = check_vertex_signs(&r.vertex_signs, t, t, &r.transition);

    let radical_reciprocal = reciprocal(&radical_char_poly);
    let quotient_reciprocal = reciprocal(&quotient_char_poly);
    let passed = vertex_signs_commute
        && preserves_weights
        && preserves_form
        && radical_invariant
        && radical_reciprocal
        && quotient_nondegenerate
        && quotient_symplectic
        && quotient_reciprocal
        && full_reciprocal
        && real_reciprocal;
    CertificateReport {
        edge_dim: n,
        weight_dim: w.len(),
        radical_dim: rad.len(),
        quotient_dim: quotient.len(),
        vertex_signs_commute,
        preserves_weights,
        preserves_form,
        radical_invariant,
        radical_char_poly,
        radical_reciprocal,
        quotient_nondegenerate,
        quotient_symplectic,
        quotient_char_poly,
        quotient_reciprocal,
        full_char_poly,
        full_reciprocal,
        real_char_poly: r.real_char_poly.clone(),
        real_reciprocal,
        passed,
    }
}
