use std::collections::HashSet;

use crate::{EdgeId, HalfId, TrainTrack, VertexId};

/// The corner at a vertex between two cyclically consecutive half-edges;
/// `right` follows `left` in the stored counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertex: VertexId,
    pub left: HalfId,
    pub right: HalfId,
    pub cusp: bool,
}

/// A boundary walk of the ribbon neighbourhood. From a corner the walk
/// leaves along `right`, arrives at the far half-edge `h'`, and continues
/// with the corner whose `left` is `h'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub corners: Vec<Corner>,
    pub cusps: usize,
}

impl BoundaryComponent {
    /// Edges traversed, in walk order; an edge passed twice appears twice.
    pub fn edges(&self, t: &TrainTrack) -> Vec<EdgeId> {
        self.corners.iter().map(|c| t.edge_of(c.right)).collect()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.corners.iter().map(|c| c.vertex).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_corner(&self, vertex: VertexId, left: HalfId) -> bool {
        self.corners.iter().any(|c| c.vertex == vertex && c.left == left)
    }
}

impl TrainTrack {
    fn corner_at(&self, vi: usize, pos: usize) -> Corner {
        let v = &self.vertices()[vi];
        let n = v.half_edges.len();
        let next = (pos + 1) % n;
        Corner {
            vertex: v.id,
            left: v.half_edges[pos],
            right: v.half_edges[next],
            cusp: v.arc_at(pos) == v.arc_at(next),
        }
    }

    /// The corner following `c` along its boundary walk.
    pub fn next_corner(&self, c: &Corner) -> Corner {
        let s = self.slot(self.mate(c.right));
        self.corner_at(s.vertex, s.pos)
    }

    /// All boundary components, each starting at its least `(vertex, left)`
    /// corner, sorted by that corner.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let mut starts: Vec<Corner> = Vec::new();
        for (vi, v) in self.vertices().iter().enumerate() {
            for pos in 0..v.half_edges.len() {
                starts.push(self.corner_at(vi, pos));
            }
        }
        starts.sort();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in starts {
            if seen.contains(&(s.vertex, s.left)) {
                continue;
            }
            let mut corners = Vec::new();
            let mut c = s;
            while seen.insert((c.vertex, c.left)) {
                corners.push(c);
                c = self.next_corner(&c);
            }
            let cusps = corners.iter().filter(|c| c.cusp).count();
            out.push(BoundaryComponent { corners, cusps });
        }
        out
    }

    /// Index (into `boundary_components()`) of the component that leaves
    /// along each half-edge.
    pub fn component_of_half(&self) -> std::collections::HashMap<HalfId, usize> {
        let mut out = std::collections::HashMap::new();
        for (i, c) in self.boundary_components().iter().enumerate() {
            for k in &c.corners {
                out.insert(k.right, i);
            }
        }
        out
    }

    /// Prong counts of all boundary components, sorted descending.
    pub fn prong_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.boundary_components().iter().map(|c| c.cusps).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures::{single_loop, tau};

    #[test]
    fn tau_boundaries() {
        for n in 3..8 {
            let t = tau(n);
            let comps = t.boundary_components();
            assert_eq!(comps.len(), n as usize + 2);
            let mut prof = t.prong_profile();
            prof.truncate(2);
            assert_eq!(prof, vec![n as usize, n as usize]);
            assert_eq!(comps.iter().filter(|c| c.cusps == 0).count(), n as usize);
            let total: usize = comps.iter().map(|c| c.cusps).sum();
            assert_eq!(total, t.local_cusp_count());
        }
    }

    #[test]
    fn loop_walks() {
        // both corners separate the two one-element arcs
        let t = single_loop();
        let comps = t.boundary_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.cusps == 0));
        assert_eq!(comps.iter().map(|c| c.corners.len()).sum::<usize>(), 2);
    }

    #[test]
    fn order_independent() {
        let t = tau(4);
        let mut d = t.data().clone();
        d.vertices.reverse();
        d.edges.reverse();
        let u = crate::TrainTrack::new(d).unwrap();
        assert_eq!(t.boundary_components(), u.boundary_components());
    }
}
