//! Builders for standardly embedded tracks given as chord diagrams on
//! infinitesimal polygons.
//!
//! Polygon vertices are numbered consecutively, polygon by polygon, and
//! vertex `p` gets id `p`. The infinitesimal edge from `p` to the next vertex
//! of its polygon has id `p`; real chord `c` has id `N + c` where `N` is the
//! total vertex count. Edge `e` owns half-edges `2e` (end 0) and `2e + 1`
//! (end 1). At every vertex the real half-edges come first (they form `E¹`),
//! followed by the outgoing and then the incoming infinitesimal half-edge.

use crate::{Edge, EdgeKind, TrackData, TrackError, TrainTrack, Vertex};

/// One real half-edge at a polygon vertex: `(chord, end)`.
pub type ChordEnd = (usize, u8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    pub polygons: Vec<usize>,
    /// For each vertex, its real half-edges left to right.
    pub reals: Vec<Vec<ChordEnd>>,
}

impl ChordDiagram {
    pub fn vertex_count(&self) -> usize {
        self.polygons.iter().sum()
    }

    pub fn chord_count(&self) -> usize {
        self.reals.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Next vertex around the polygon containing `p`.
    pub fn next(&self, p: usize) -> usize {
        let (base, size) = self.locate(p);
        base + (p - base + 1) % size
    }

    pub fn prev(&self, p: usize) -> usize {
        let (base, size) = self.locate(p);
        base + (p - base + size - 1) % size
    }

    fn locate(&self, p: usize) -> (usize, usize) {
        let mut base = 0;
        for &s in &self.polygons {
            if p < base + s {
                return (base, s);
            }
            base += s;
        }
        panic!("vertex {p} outside the diagram");
    }

    pub fn to_track(&self) -> Result<TrainTrack, TrackError> {
        let n = self.vertex_count();
        if self.reals.len() != n {
            return Err(TrackError::NotFound(format!("{} real lists for {n} vertices", self.reals.len())));
        }
        let half = |e: usize, end: u8| (2 * e + end as usize) as u32;
        let mut vertices = Vec::with_capacity(n);
        for p in 0..n {
            let mut hs: Vec<u32> = self.reals[p].iter().map(|&(c, end)| half(n + c, end)).collect();
            let split = hs.len();
            hs.push(half(p, 0));
            hs.push(half(self.prev(p), 1));
            vertices.push(Vertex { id: p as u32, half_edges: hs, split });
        }
        let mut edges: Vec<Edge> = (0..n)
            .map(|p| Edge { id: p as u32, halves: [half(p, 0), half(p, 1)], kind: EdgeKind::Infinitesimal })
            .collect();
        for c in 0..self.chord_count() {
            let e = n + c;
            edges.push(Edge { id: e as u32, halves: [half(e, 0), half(e, 1)], kind: EdgeKind::Real });
        }
        TrainTrack::new(TrackData { vertices, edges })
    }
}

/// The model track `τ_n`: an `n`-gon with real edge `e_i` joining `v_i` to
/// `v_{i+1}`, and `e_{i-1}` left of `e_i` at `v_i`.
pub fn tau_model(n: usize) -> TrainTrack {
    assert!(n >= 1, "τ_n needs at least one vertex");
    let reals = (0..n).map(|i| vec![((i + n - 1) % n, 1), (i, 0)]).collect();
    ChordDiagram { polygons: vec![n], reals }.to_track().expect("τ_n is a valid track")
}
