use std::collections::BTreeMap;

use crate::{Edge, EdgeId, HalfId, TrackData, TrackError, TrainTrack, Vertex, VertexId};

/// The orientation double cover and its projection. Sheet `s ∈ {0, 1}` of a
/// vertex, edge or half-edge with id `x` gets id `2x + s`.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub cover: TrainTrack,
    pub vertex_proj: BTreeMap<VertexId, VertexId>,
    pub edge_proj: BTreeMap<EdgeId, EdgeId>,
    pub half_proj: BTreeMap<HalfId, HalfId>,
}

impl DoubleCover {
    /// The two lifts of a base edge.
    pub fn edge_lifts(e: EdgeId) -> [EdgeId; 2] {
        [2 * e, 2 * e + 1]
    }

    pub fn vertex_lifts(v: VertexId) -> [VertexId; 2] {
        [2 * v, 2 * v + 1]
    }

    /// The deck transformation on edges (swap of sheets).
    pub fn deck_edge(e: EdgeId) -> EdgeId {
        e ^ 1
    }
}

impl TrainTrack {
    /// Cocycle of the orientation double cover: 1 on edges whose two ends lie
    /// in arcs with the same index, since orienting every vertex "`E¹` in,
    /// `E²` out" is consistent exactly along the other edges.
    pub fn orientation_cocycle(&self, e: &Edge) -> u8 {
        u8::from(self.arc_of(e.halves[0]) == self.arc_of(e.halves[1]))
    }

    /// Vertices `(v, s)`; lift `(e, s)` of an edge starts at `(v_0, s)` and
    /// ends at `(v_1, s + c(e))`. Every lifted vertex keeps the cyclic order
    /// and split of its base vertex, so the cover is orientable by
    /// construction.
    pub fn orientation_double_cover(&self) -> Result<DoubleCover, TrackError> {
        let mut sheet_of_half: BTreeMap<(HalfId, u8), HalfId> = BTreeMap::new();
        let mut edges = Vec::new();
        let mut edge_proj = BTreeMap::new();
        let mut half_proj = BTreeMap::new();
        for e in self.edges() {
            let c = self.orientation_cocycle(e);
            for s in 0..2u8 {
                let h0 = 2 * e.halves[0] + s as u32;
                let s1 = s ^ c;
                let h1 = 2 * e.halves[1] + s1 as u32;
                sheet_of_half.insert((e.halves[0], s), h0);
                sheet_of_half.insert((e.halves[1], s1), h1);
                let id = 2 * e.id + s as u32;
                edges.push(Edge { id, halves: [h0, h1], kind: e.kind });
                edge_proj.insert(id, e.id);
                half_proj.insert(h0, e.halves[0]);
                half_proj.insert(h1, e.halves[1]);
            }
        }
        let mut vertices = Vec::new();
        let mut vertex_proj = BTreeMap::new();
        for v in self.vertices() {
            for s in 0..2u8 {
                let half_edges = v.half_edges.iter().map(|&h| sheet_of_half[&(h, s)]).collect();
                let id = 2 * v.id + s as u32;
                vertices.push(Vertex { id, half_edges, split: v.split });
                vertex_proj.insert(id, v.id);
            }
        }
        let cover = TrainTrack::new(TrackData { vertices, edges })?;
        Ok(DoubleCover { cover, vertex_proj, edge_proj, half_proj })
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures::tau;

    #[test]
    fn tau3_cover() {
        let t = tau(3);
        let d = t.orientation_double_cover().unwrap();
        assert_eq!(d.cover.vertex_count(), 6);
        assert_eq!(d.cover.edge_count(), 12);
        assert_eq!(d.cover.euler_characteristic(), -6);
        assert!(d.cover.is_connected());
        assert!(d.cover.is_orientable());
    }

    #[test]
    fn tau4_cover_is_two_copies() {
        let t = tau(4);
        let d = t.orientation_double_cover().unwrap();
        assert_eq!(d.cover.connected_components().len(), 2);
        assert!(d.cover.is_orientable());
    }
}
