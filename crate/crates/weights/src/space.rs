use num_bigint::BigInt;
use polyexact::linalg::{self, QVec};
use polyexact::IntMatrix;
use traintrack::TrainTrack;

use moves::MoveRecord;

/// `T_V`: one row per vertex, `Σ_{E¹_v} w(e) - Σ_{E²_v} w(e)`. A loop with
/// both ends in one arc contributes twice.
pub fn switch_matrix(t: &TrainTrack) -> IntMatrix {
    let eids = t.edge_ids(None);
    let vids = t.vertex_ids();
    let mut m = IntMatrix::zeros(vids.len(), eids.len());
    for (r, &v) in vids.iter().enumerate() {
        let vert = t.vertex(v).unwrap();
        for (pos, &h) in vert.half_edges.iter().enumerate() {
            let c = eids.binary_search(&t.edge_of(h)).unwrap();
            let sign = if pos < vert.split { 1 } else { -1 };
            m.add_to(r, c, &BigInt::from(sign));
        }
    }
    let labels = |ids: &[u32]| ids.iter().map(|i| i.to_string()).collect();
    m.with_labels(labels(&vids), labels(&eids)).expect("label counts match")
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub edge_ids: Vec<u32>,
    pub switch: IntMatrix,
    /// Reduced echelon basis of `ker T_V`.
    pub basis: Vec<QVec>,
}

impl WeightSpace {
    pub fn ambient_dim(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, w: &[num_rational::BigRational]) -> bool {
        linalg::is_zero_vec(&linalg::int_mat_vec(&self.switch, w))
    }
}

pub fn weight_space(t: &TrainTrack) -> WeightSpace {
    let switch = switch_matrix(t);
    let basis = linalg::kernel(&linalg::from_int_matrix(&switch), t.edge_count());
    WeightSpace { edge_ids: t.edge_ids(None), switch, basis }
}

/// Signed vertex permutation carried by a move record.
pub fn vertex_sign_matrix(r: &MoveRecord) -> &IntMatrix {
    &r.vertex_signs
}

/// Whether `P · T_V(src) = T_V(dst) · f` holds exactly.
pub fn check_vertex_signs(p: &IntMatrix, src: &TrainTrack, dst: &TrainTrack, f: &IntMatrix) -> bool {
    match (p.mul(&switch_matrix(src)), switch_matrix(dst).mul(f)) {
        (Ok(a), Ok(b)) => a.rows() == b.rows(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use traintrack::models::tau_model;
    use traintrack::{Edge, EdgeKind, TrackData, Vertex};

    #[test]
    fn tau3_dimension() {
        assert_eq!(weight_space(&tau_model(3)).dim(), 3);
    }

    #[test]
    fn single_loop() {
        let t = TrainTrack::new(TrackData {
            vertices: vec![Vertex { id: 0, half_edges: vec![0, 1], split: 1 }],
            edges: vec![Edge { id: 0, halves: [0, 1], kind: EdgeKind::Real }],
        })
        .unwrap();
        let w = weight_space(&t);
        assert_eq!(w.dim(), 1);
        assert_eq!(w.basis[0], linalg::qvec(&[1]));
    }

    #[test]
    fn basis_satisfies_switches() {
        for n in 3..8 {
            let w = weight_space(&tau_model(n));
            assert!(w.basis.iter().all(|b| w.contains(b)));
        }
    }
}
