use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use polyexact::linalg::{self, QVec};
use polyexact::IntMatrix;
use serde::Serialize;
use traintrack::TrainTrack;

use crate::space::{weight_space, WeightSpace};
use crate::WeightError;

#[derive(Clone, Debug)]
pub struct BilinearForm {
    /// Skew matrix `G` with `ω(x, y) = xᵀ G y` on the edge space.
    pub matrix: IntMatrix,
    pub space: WeightSpace,
    /// Gram matrix of `ω` on `space.basis`.
    pub restricted: Vec<QVec>,
}

impl BilinearForm {
    pub fn eval(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        linalg::dot(x, &linalg::int_mat_vec(&self.matrix, y))
    }
}

/// `ω(w₁, w₂) = Σ_v Σ_{a left of b} w₁(a) w₂(b) - w₁(b) w₂(a)`.
pub fn thurston_form(t: &TrainTrack) -> BilinearForm {
    let eids = t.edge_ids(None);
    let n = eids.len();
    let mut g = IntMatrix::zeros(n, n);
    let one = BigInt::from(1);
    let minus = BigInt::from(-1);
    for (a, b) in t.left_pairs() {
        let i = eids.binary_search(&t.edge_of(a)).unwrap();
        let j = eids.binary_search(&t.edge_of(b)).unwrap();
        g.add_to(i, j, &one);
        g.add_to(j, i, &minus);
    }
    let labels: Vec<String> = eids.iter().map(|i| i.to_string()).collect();
    let matrix = g.with_labels(labels.clone(), labels).expect("square");
    let space = weight_space(t);
    let restricted = linalg::gram(&linalg::from_int_matrix(&matrix), &space.basis);
    BilinearForm { matrix, space, restricted }
}

fn combine(basis: &[QVec], coeffs: &[BigRational], n: usize) -> QVec {
    let mut v = vec![BigRational::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    v
}

/// Echelon basis, in edge coordinates, of `rad(ω|W)`.
pub fn radical(t: &TrainTrack) -> Vec<QVec> {
    let f = thurston_form(t);
    let n = t.edge_count();
    let coeffs = linalg::kernel(&f.restricted, f.space.dim());
    let vecs: Vec<QVec> = coeffs.iter().map(|c| combine(&f.space.basis, c, n)).collect();
    linalg::span_basis(&vecs, n)
}

/// Kernel of `ω` on the whole edge space; for diagnostics only.
pub fn ambient_radical(t: &TrainTrack) -> Vec<QVec> {
    let f = thurston_form(t);
    linalg::kernel(&linalg::from_int_matrix(&f.matrix), t.edge_count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalElement {
    /// Index into `boundary_components()`.
    pub component: usize,
    pub prongs: usize,
    /// Integer weights in ascending edge-id order.
    pub weights: Vec<BigInt>,
}

impl RadicalElement {
    pub fn to_qvec(&self) -> QVec {
        self.weights.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    }
}

/// Alternating weight of an even-pronged component: intervals between
/// cusps get `(-1)^k`, numbered from 1 starting after the cusp corner with
/// the least `(vertex id, left half-edge id)`. A 0-pronged component gets
/// weight 1 on every traversal.
pub fn radical_element(t: &TrainTrack, component: usize) -> Result<RadicalElement, WeightError> {
    let comps = t.boundary_components();
    let c = comps
        .get(component)
        .ok_or_else(|| WeightError::NotFound(format!("boundary component {component}")))?;
    if c.cusps % 2 == 1 {
        return Err(WeightError::Domain(format!(
            "boundary component {component} is {}-pronged",
            c.cusps
        )));
    }
    let eids = t.edge_ids(None);
    let mut weights = vec![BigInt::zero(); eids.len()];
    let m = c.corners.len();
    let start = c
        .corners
        .iter()
        .enumerate()
        .filter(|(_, k)| k.cusp)
        .min_by_key(|(_, k)| (k.vertex, k.left))
        .map_or(0, |(i, _)| i);
    let mut sign = if c.cusps == 0 { 1 } else { 0 };
    for step in 0..m {
        let k = &c.corners[(start + step) % m];
        if k.cusp {
            sign = if sign == -1 { 1 } else { -1 };
        }
        let i = eids.binary_search(&t.edge_of(k.right)).unwrap();
        weights[i] += sign;
    }
    Ok(RadicalElement { component, prongs: c.cusps, weights })
}

/// Radical elements of all even-pronged components, in component order.
pub fn radical_elements(t: &TrainTrack) -> Vec<RadicalElement> {
    let comps = t.boundary_components();
    (0..comps.len()).filter(|&i| comps[i].cusps.is_multiple_of(2)).map(|i| radical_element(t, i).unwrap()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalSpanReport {
    pub weight_dim: usize,
    pub radical_dim: usize,
    pub elements: usize,
    pub span_dim: usize,
    /// `elements - span_dim`: independent linear relations among the `r_c`.
    pub relations: usize,
    /// `rad(ω|W) = span{r_c}`.
    pub equal: bool,
}

pub fn radical_span_report(t: &TrainTrack) -> RadicalSpanReport {
    let n = t.edge_count();
    let rad = radical(t);
    let elems: Vec<QVec> = radical_elements(t).iter().map(RadicalElement::to_qvec).collect();
    let span = linalg::span_basis(&elems, n);
    RadicalSpanReport {
        weight_dim: weight_space(t).dim(),
        radical_dim: rad.len(),
        elements: elems.len(),
        span_dim: span.len(),
        relations: elems.len() - span.len(),
        equal: span == rad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use traintrack::models::tau_model;

    #[test]
    fn tau3_form_vanishes_on_weights() {
        let f = thurston_form(&tau_model(3));
        assert!(f.restricted.iter().flatten().all(|x| x.is_zero()));
        let r = radical_span_report(&tau_model(3));
        assert_eq!((r.weight_dim, r.radical_dim, r.span_dim), (3, 3, 3));
        assert!(r.equal);
    }

    #[test]
    fn zero_pronged_polygon_is_all_ones() {
        let t = tau_model(3);
        let comps = t.boundary_components();
        let i = comps.iter().position(|c| c.cusps == 0).unwrap();
        let r = radical_element(&t, i).unwrap();
        let edges = comps[i].edges(&t);
        for (k, &e) in t.edge_ids(None).iter().enumerate() {
            let expect = edges.iter().filter(|&&x| x == e).count();
            assert_eq!(r.weights[k], BigInt::from(expect));
        }
    }

    #[test]
    fn odd_component_rejected() {
        let t = tau_model(3);
        let comps = t.boundary_components();
        let i = comps.iter().position(|c| c.cusps == 3).unwrap();
        assert!(matches!(radical_element(&t, i), Err(WeightError::Domain(_))));
    }

    #[test]
    fn tau4_single_relation() {
        let r = radical_span_report(&tau_model(4));
        assert_eq!(r.elements, 6);
        assert_eq!(r.relations, 1);
        assert!(r.equal);
    }
}
