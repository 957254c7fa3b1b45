use std::collections::{BTreeMap, BTreeSet};

use crate::{EdgeId, EdgeKind, TrainTrack, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardReport {
    pub standard: bool,
    pub diagnostics: Vec<String>,
    /// Vertex cycles of the infinitesimal polygons, each starting at its least
    /// vertex and following the infinitesimal edges.
    pub polygons: Vec<Vec<VertexId>>,
}

/// Edge directions: `forward[e]` means `e` runs from `halves[0]` to `halves[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub forward: BTreeMap<EdgeId, bool>,
    /// Which arc (0 for `E¹`, 1 for `E²`) points into each vertex.
    pub incoming_arc: BTreeMap<VertexId, u8>,
}

/// Union-find with parity, for systems of equations `x_a + x_b = c` over GF(2).
pub(crate) struct ParityUnion {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnion {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnion { parent: (0..n).collect(), parity: vec![0; n] }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // recompute parities to the root, then compress
        for &y in path.iter().rev() {
            let p = self.parent[y];
            if p != r {
                self.parity[y] ^= self.parity[p];
            }
            self.parent[y] = r;
        }
        (r, if x == r { 0 } else { self.parity[x] })
    }

    /// Impose `x_a + x_b = c`; false on contradiction.
    pub(crate) fn relate(&mut self, a: usize, b: usize, c: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == c;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ c;
        true
    }
}

impl TrainTrack {
    /// Checks that the smoothing separates real from infinitesimal half-edges
    /// at each vertex, that the infinitesimal edges form disjoint cycles
    /// through every vertex, and that each such cycle is a boundary component.
    pub fn standard_report(&self) -> StandardReport {
        let mut diagnostics = Vec::new();
        for v in self.vertices() {
            for a in 0..2u8 {
                let kinds: BTreeSet<EdgeKind> = v.arc(a).iter().map(|&h| self.kind_of(h)).collect();
                if kinds.len() > 1 {
                    diagnostics.push(format!("vertex {}: smoothing arc {} mixes real and infinitesimal", v.id, a + 1));
                }
            }
            let inf = v.half_edges.iter().filter(|&&h| self.kind_of(h) == EdgeKind::Infinitesimal).count();
            if inf != 2 {
                diagnostics.push(format!("vertex {}: {inf} infinitesimal half-edges (need 2)", v.id));
            }
        }
        let mut polygons = Vec::new();
        if diagnostics.is_empty() {
            let mut visited = BTreeSet::new();
            for start in self.vertex_ids() {
                if visited.contains(&start) {
                    continue;
                }
                let inf_halves = |v: VertexId| -> Vec<u32> {
                    self.vertex(v)
                        .unwrap()
                        .half_edges
                        .iter()
                        .copied()
                        .filter(|&h| self.kind_of(h) == EdgeKind::Infinitesimal)
                        .collect()
                };
                let mut cycle = vec![start];
                visited.insert(start);
                let mut h = inf_halves(start)[0];
                loop {
                    let arrive = self.mate(h);
                    let v = self.vertex_of(arrive);
                    if v == start {
                        break;
                    }
                    if !visited.insert(v) {
                        diagnostics.push(format!("infinitesimal edges through vertex {v} do not form a cycle"));
                        break;
                    }
                    cycle.push(v);
                    h = *inf_halves(v).iter().find(|&&x| x != arrive).unwrap();
                }
                polygons.push(cycle);
            }
            let comps = self.boundary_components();
            for poly in &polygons {
                let set: BTreeSet<VertexId> = poly.iter().copied().collect();
                let matches = comps.iter().any(|c| {
                    c.corners.len() == poly.len()
                        && c.corners.iter().all(|k| {
                            self.kind_of(k.left) == EdgeKind::Infinitesimal
                                && self.kind_of(k.right) == EdgeKind::Infinitesimal
                        })
                        && c.vertices().into_iter().collect::<BTreeSet<_>>() == set
                });
                if !matches {
                    diagnostics.push(format!("infinitesimal cycle through {poly:?} is not a boundary component"));
                }
            }
        }
        StandardReport { standard: diagnostics.is_empty(), diagnostics, polygons }
    }

    pub fn is_standardly_embedded(&self) -> bool {
        self.standard_report().standard
    }

    /// A consistent orientation if one exists. Variables are one bit per edge
    /// (reversed or not) and one per vertex (which arc points in); each
    /// half-edge gives one parity equation.
    pub fn orientation(&self) -> Option<Orientation> {
        let ne = self.edge_count();
        let mut uf = ParityUnion::new(ne + self.vertex_count());
        for (ei, e) in self.edges().iter().enumerate() {
            for (end, &h) in e.halves.iter().enumerate() {
                // h points into its vertex iff (end == 1) xor reversed(e);
                // it must equal incoming(v) xor arc(h)
                let s = self.slot(h);
                let c = u8::from(end == 1) ^ self.arc_of(h);
                if !uf.relate(ei, ne + s.vertex, c) {
                    return None;
                }
            }
        }
        let mut forward = BTreeMap::new();
        for (ei, e) in self.edges().iter().enumerate() {
            forward.insert(e.id, parity_value(&mut uf, ei) == 0);
        }
        let mut incoming_arc = BTreeMap::new();
        for (vi, v) in self.vertices().iter().enumerate() {
            incoming_arc.insert(v.id, 1 ^ parity_value(&mut uf, ne + vi));
        }
        Some(Orientation { forward, incoming_arc })
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// Whether `o` satisfies the orientation condition at every vertex.
    pub fn check_orientation(&self, o: &Orientation) -> bool {
        self.vertices().iter().all(|v| {
            let into = |h: u32| {
                let s = self.slot(h);
                let fwd = o.forward[&self.edges()[s.edge].id];
                (s.end == 1) == fwd
            };
            let a: BTreeSet<bool> = v.arc(0).iter().map(|&h| into(h)).collect();
            let b: BTreeSet<bool> = v.arc(1).iter().map(|&h| into(h)).collect();
            a.len() == 1 && b.len() == 1 && a != b
        })
    }
}

/// Value of a variable when every root is set to 0.
fn parity_value(uf: &mut ParityUnion, x: usize) -> u8 {
    uf.find(x).1
}
