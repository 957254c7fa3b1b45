use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::{EdgeId, HalfId, TrackData, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    /// Listed at a vertex but carried by no edge, or carried by an edge but
    /// listed at no vertex.
    UnpairedHalf(HalfId),
    /// Appears more than once among vertex lists or among edges.
    RepeatedHalf(HalfId),
    EmptySmoothingSide(VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Violation::UnpairedHalf(h) => write!(f, "unpaired half-edge {h}"),
            Violation::RepeatedHalf(h) => write!(f, "half-edge {h} used more than once"),
            Violation::EmptySmoothingSide(v) => write!(f, "empty smoothing side at vertex {v}"),
        }
    }
}

/// All violated invariants of raw track data, in a stable order. Empty iff
/// the data describes a valid train track.
pub fn validate(t: &TrackData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen_v = HashSet::new();
    for v in &t.vertices {
        if !seen_v.insert(v.id) {
            out.push(Violation::DuplicateVertex(v.id));
        }
    }
    let mut seen_e = HashSet::new();
    for e in &t.edges {
        if !seen_e.insert(e.id) {
            out.push(Violation::DuplicateEdge(e.id));
        }
    }
    let mut at_vertex: HashMap<HalfId, usize> = HashMap::new();
    for v in &t.vertices {
        for &h in &v.half_edges {
            *at_vertex.entry(h).or_default() += 1;
        }
    }
    let mut on_edge: HashMap<HalfId, usize> = HashMap::new();
    for e in &t.edges {
        for &h in &e.halves {
            *on_edge.entry(h).or_default() += 1;
        }
    }
    let mut halves: Vec<HalfId> = at_vertex.keys().chain(on_edge.keys()).copied().collect();
    halves.sort_unstable();
    halves.dedup();
    for h in halves {
        let a = at_vertex.get(&h).copied().unwrap_or(0);
        let b = on_edge.get(&h).copied().unwrap_or(0);
        if a > 1 || b > 1 {
            out.push(Violation::RepeatedHalf(h));
        } else if a != b {
            out.push(Violation::UnpairedHalf(h));
        }
    }
    for v in &t.vertices {
        if v.split == 0 || v.split >= v.half_edges.len() {
            out.push(Violation::EmptySmoothingSide(v.id));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Edge, EdgeKind, Vertex};

    fn loop_data(split: usize) -> TrackData {
        TrackData {
            vertices: vec![Vertex { id: 0, half_edges: vec![0, 1], split }],
            edges: vec![Edge { id: 0, halves: [0, 1], kind: EdgeKind::Real }],
        }
    }

    #[test]
    fn valid_loop() {
        assert!(validate(&loop_data(1)).is_empty());
    }

    #[test]
    fn empty_side() {
        let r = validate(&loop_data(2));
        assert_eq!(r, vec![Violation::EmptySmoothingSide(0)]);
        assert_eq!(r[0].to_string(), "empty smoothing side at vertex 0");
    }

    #[test]
    fn dangling_half() {
        let mut d = loop_data(1);
        d.vertices[0].half_edges.push(7);
        let r = validate(&d);
        assert_eq!(r, vec![Violation::UnpairedHalf(7)]);
        assert_eq!(r[0].to_string(), "unpaired half-edge 7");
    }

    #[test]
    fn duplicates() {
        let mut d = loop_data(1);
        d.edges.push(Edge { id: 0, halves: [0, 5], kind: EdgeKind::Real });
        let r = validate(&d);
        assert!(r.contains(&Violation::DuplicateEdge(0)));
        assert!(r.contains(&Violation::RepeatedHalf(0)));
        assert!(r.contains(&Violation::UnpairedHalf(5)));
    }
}
