//! Combinatorial train tracks on surfaces.
//!
//! A track is stored as ribbon data: every vertex (switch) lists its
//! half-edges counterclockwise, and `split` cuts that list into the two
//! smoothing arcs `E¹ = half_edges[..split]` and `E² = half_edges[split..]`.
//! Within an arc, a half-edge lies to the left of every half-edge stored
//! after it.

mod boundary;
mod cover;
mod embed;
pub mod models;
mod validate;

pub use boundary::{BoundaryComponent, Corner};
pub use cover::DoubleCover;
pub use embed::{Orientation, StandardReport};
pub use validate::{validate, Violation};

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;
pub type HalfId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Real,
    Infinitesimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub half_edges: Vec<HalfId>,
    pub split: usize,
}

impl Vertex {
    /// Smoothing arc (0 for `E¹`, 1 for `E²`) of the half-edge at `pos`.
    pub fn arc_at(&self, pos: usize) -> u8 {
        u8::from(pos >= self.split)
    }

    pub fn arc(&self, a: u8) -> &[HalfId] {
        if a == 0 {
            &self.half_edges[..self.split]
        } else {
            &self.half_edges[self.split..]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub halves: [HalfId; 2],
    pub kind: EdgeKind,
}

#[derive(Debug, Error)]
pub enum TrackError {
    #[error("invalid train track: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Raw track data exactly as stored in JSON; not necessarily valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackData {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// Where a half-edge sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfSlot {
    /// Index into `vertices()`.
    pub vertex: usize,
    pub pos: usize,
    /// Index into `edges()`.
    pub edge: usize,
    /// Which entry of `halves` this is.
    pub end: usize,
}

/// A validated train track with lookup tables.
#[derive(Clone, PartialEq, Eq)]
pub struct TrainTrack {
    data: TrackData,
    slots: HashMap<HalfId, HalfSlot>,
    vindex: HashMap<VertexId, usize>,
    eindex: HashMap<EdgeId, usize>,
}

impl fmt::Debug for TrainTrack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrainTrack").field("vertices", &self.data.vertices).field("edges", &self.data.edges).finish()
    }
}

impl Serialize for TrainTrack {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.data.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrainTrack {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let data = TrackData::deserialize(d)?;
        TrainTrack::new(data).map_err(serde::de::Error::custom)
    }
}

impl TrainTrack {
    pub fn new(data: TrackData) -> Result<Self, TrackError> {
        let report = validate(&data);
        if !report.is_empty() {
            return Err(TrackError::Invalid(report));
        }
        let mut slots = HashMap::new();
        let mut owner = HashMap::new();
        for (ei, e) in data.edges.iter().enumerate() {
            for (end, &h) in e.halves.iter().enumerate() {
                owner.insert(h, (ei, end));
            }
        }
        for (vi, v) in data.vertices.iter().enumerate() {
            for (pos, h) in v.half_edges.iter().enumerate() {
                let (edge, end) = owner[h];
                slots.insert(*h, HalfSlot { vertex: vi, pos, edge, end });
            }
        }
        let vindex = data.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let eindex = data.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        Ok(TrainTrack { data, slots, vindex, eindex })
    }

    pub fn from_json(text: &str) -> Result<Self, TrackError> {
        TrainTrack::new(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TrackError> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|source| TrackError::Io { path: p.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.data).expect("track data serializes")
    }

    pub fn data(&self) -> &TrackData {
        &self.data
    }

    pub fn into_data(self) -> TrackData {
        self.data
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.data.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.data.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.data.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.data.edges.len()
    }

    pub fn vertex_index(&self, id: VertexId) -> Option<usize> {
        self.vindex.get(&id).copied()
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.eindex.get(&id).copied()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vertex_index(id).map(|i| &self.data.vertices[i])
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.data.edges[i])
    }

    pub fn slot(&self, h: HalfId) -> HalfSlot {
        self.slots[&h]
    }

    pub fn has_half(&self, h: HalfId) -> bool {
        self.slots.contains_key(&h)
    }

    /// The other half of the edge containing `h`.
    pub fn mate(&self, h: HalfId) -> HalfId {
        let s = self.slots[&h];
        self.data.edges[s.edge].halves[1 - s.end]
    }

    /// Edge id carrying half-edge `h`.
    pub fn edge_of(&self, h: HalfId) -> EdgeId {
        self.data.edges[self.slots[&h].edge].id
    }

    /// Vertex id at which half-edge `h` sits.
    pub fn vertex_of(&self, h: HalfId) -> VertexId {
        self.data.vertices[self.slots[&h].vertex].id
    }

    pub fn arc_of(&self, h: HalfId) -> u8 {
        let s = self.slots[&h];
        self.data.vertices[s.vertex].arc_at(s.pos)
    }

    pub fn kind_of(&self, h: HalfId) -> EdgeKind {
        self.data.edges[self.slots[&h].edge].kind
    }

    pub fn is_loop(&self, e: &Edge) -> bool {
        self.slots[&e.halves[0]].vertex == self.slots[&e.halves[1]].vertex
    }

    /// Edge ids of the given kind, ascending.
    pub fn edge_ids(&self, kind: Option<EdgeKind>) -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> =
            self.data.edges.iter().filter(|e| kind.is_none_or(|k| e.kind == k)).map(|e| e.id).collect();
        v.sort_unstable();
        v
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.data.vertices.iter().map(|v| v.id).collect();
        v.sort_unstable();
        v
    }

    pub fn max_half_id(&self) -> Option<HalfId> {
        self.slots.keys().copied().max()
    }

    /// `|V| - |E|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    /// Total cusp count computed vertex by vertex.
    pub fn local_cusp_count(&self) -> usize {
        self.data.vertices.iter().map(|v| v.half_edges.len() - 2).sum()
    }

    /// Connected components as sorted lists of vertex ids.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in &self.data.edges {
            let a = find(&mut parent, self.slots[&e.halves[0]].vertex);
            let b = find(&mut parent, self.slots[&e.halves[1]].vertex);
            parent[a] = b;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.data.vertices[i].id);
        }
        let mut out: Vec<Vec<VertexId>> = groups
            .into_values()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Pairs `(a, b)` of half-edges at one vertex, in one arc, with `a` left of `b`.
    pub fn left_pairs(&self) -> Vec<(HalfId, HalfId)> {
        let mut out = Vec::new();
        for v in &self.data.vertices {
            for a in 0..2u8 {
                let arc = v.arc(a);
                for i in 0..arc.len() {
                    for j in i + 1..arc.len() {
                        out.push((arc[i], arc[j]));
                    }
                }
            }
        }
        out
    }

    /// One-line summary: validity, Euler characteristic and prong counts.
    pub fn summary(&self) -> String {
        let comps = self.boundary_components();
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in &comps {
            *counts.entry(c.cusps).or_default() += 1;
        }
        let parts: Vec<String> =
            counts.iter().rev().map(|(p, n)| format!("{n}×{p}-pronged")).collect();
        let chi = self.euler_characteristic();
        let chi_text = if chi < 0 { format!("−{}", -chi) } else { chi.to_string() };
        format!("valid; χ={chi_text}; boundary: {}", parts.join(", "))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// One vertex with a single loop, arcs of size one each.
    pub fn single_loop() -> TrainTrack {
        TrainTrack::new(TrackData {
            vertices: vec![Vertex { id: 0, half_edges: vec![0, 1], split: 1 }],
            edges: vec![Edge { id: 0, halves: [0, 1], kind: EdgeKind::Real }],
        })
        .unwrap()
    }

    pub fn tau(n: u32) -> TrainTrack {
        crate::models::tau_model(n as usize)
    }
}
