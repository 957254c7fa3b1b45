use std::collections::{BTreeMap, VecDeque};

use traintrack::{EdgeId, HalfId, TrainTrack, VertexId};

use crate::ops::{map_matrix, MoveKind, MoveRecord};

/// Orientation-preserving isomorphism between two train tracks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, EdgeId>,
    pub halves: BTreeMap<HalfId, HalfId>,
    /// Vertices whose `E¹` goes to the image's `E²`.
    pub swapped: Vec<VertexId>,
}

impl Isomorphism {
    fn sort_key(&self) -> (Vec<VertexId>, Vec<EdgeId>, Vec<HalfId>) {
        (
            self.vertices.values().copied().collect(),
            self.edges.values().copied().collect(),
            self.halves.values().copied().collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.halves.iter().all(|(a, b)| a == b) && self.swapped.is_empty()
    }

    /// Express the isomorphism `src → dst` as a move record.
    pub fn record(&self, src: &TrainTrack, dst: &TrainTrack) -> MoveRecord {
        let se = src.edge_ids(None);
        let de = dst.edge_ids(None);
        let pairs: Vec<(u32, u32)> = self.edges.iter().map(|(&a, &b)| (b, a)).collect();
        let matrix = map_matrix(&de, &se, &pairs);
        let sv = src.vertex_ids();
        let dv = dst.vertex_ids();
        let vpairs: Vec<(u32, u32)> = self.vertices.iter().map(|(&a, &b)| (b, a)).collect();
        let mut vertex_signs = map_matrix(&dv, &sv, &vpairs);
        for &v in &self.swapped {
            let c = sv.iter().position(|&x| x == v).unwrap();
            let r = dv.iter().position(|&x| x == self.vertices[&v]).unwrap();
            vertex_signs.set(r, c, (-1).into());
        }
        let ca = src.component_of_half();
        let cb = dst.component_of_half();
        let mut boundary: Vec<(usize, usize)> = self.halves.iter().map(|(a, b)| (ca[a], cb[b])).collect();
        boundary.sort_unstable();
        boundary.dedup();
        MoveRecord { kind: MoveKind::Isomorphism, params: None, result: dst.clone(), matrix, vertex_signs, boundary }
    }
}

#[derive(Clone, Default)]
struct Partial {
    vmap: BTreeMap<usize, (usize, bool)>,
    hmap: BTreeMap<HalfId, HalfId>,
    used: Vec<bool>,
}

/// Image of the half-edge list at `a` under a vertex match: either
/// `E¹ ↦ E¹'`, or (swapped) `E¹ ↦ E²'` with `E² ↦ E¹'`.
fn vertex_pairs(s: &TrainTrack, t: &TrainTrack, a: usize, b: usize, swap: bool) -> Option<Vec<(HalfId, HalfId)>> {
    let va = &s.vertices()[a];
    let vb = &t.vertices()[b];
    if va.half_edges.len() != vb.half_edges.len() {
        return None;
    }
    let (x1, x2) = (va.arc(0), va.arc(1));
    let (y1, y2) = if swap { (vb.arc(1), vb.arc(0)) } else { (vb.arc(0), vb.arc(1)) };
    if x1.len() != y1.len() {
        return None;
    }
    Some(x1.iter().zip(y1).chain(x2.iter().zip(y2)).map(|(&p, &q)| (p, q)).collect())
}

fn assign(s: &TrainTrack, t: &TrainTrack, p: &mut Partial, a: usize, b: usize, swap: bool, queue: &mut VecDeque<usize>) -> bool {
    if let Some(&(b0, sw0)) = p.vmap.get(&a) {
        return b0 == b && sw0 == swap;
    }
    if p.used[b] {
        return false;
    }
    let Some(pairs) = vertex_pairs(s, t, a, b, swap) else { return false };
    for &(h, h2) in &pairs {
        if s.kind_of(h) != t.kind_of(h2) {
            return false;
        }
    }
    for (h, h2) in pairs {
        if let Some(&old) = p.hmap.get(&h) {
            if old != h2 {
                return false;
            }
        }
        p.hmap.insert(h, h2);
    }
    p.vmap.insert(a, (b, swap));
    p.used[b] = true;
    queue.push_back(a);
    true
}

/// Extend a partial map from a seeded vertex across its connected component.
fn propagate(s: &TrainTrack, t: &TrainTrack, mut p: Partial, a: usize, b: usize, swap: bool) -> Option<Partial> {
    let mut queue = VecDeque::new();
    if !assign(s, t, &mut p, a, b, swap, &mut queue) {
        return None;
    }
    while let Some(x) = queue.pop_front() {
        for &h in &s.vertices()[x].half_edges {
            let h2 = p.hmap[&h];
            let (m, m2) = (s.mate(h), t.mate(h2));
            let (sm, tm) = (s.slot(m), t.slot(m2));
            let vs = &s.vertices()[sm.vertex];
            let vt = &t.vertices()[tm.vertex];
            let swap = vs.arc_at(sm.pos) != vt.arc_at(tm.pos);
            if !assign(s, t, &mut p, sm.vertex, tm.vertex, swap, &mut queue) {
                return None;
            }
            if p.hmap.get(&m) != Some(&m2) {
                return None;
            }
        }
    }
    Some(p)
}

fn finish(s: &TrainTrack, t: &TrainTrack, p: &Partial) -> Option<Isomorphism> {
    let mut edges = BTreeMap::new();
    for e in s.edges() {
        let a = t.edge_of(p.hmap[&e.halves[0]]);
        if t.edge_of(p.hmap[&e.halves[1]]) != a {
            return None;
        }
        edges.insert(e.id, a);
    }
    Some(Isomorphism {
        vertices: p.vmap.iter().map(|(&a, &(b, _))| (s.vertices()[a].id, t.vertices()[b].id)).collect(),
        edges,
        halves: p.hmap.clone(),
        swapped: p.vmap.iter().filter(|(_, &(_, sw))| sw).map(|(&a, _)| s.vertices()[a].id).collect(),
    })
}

/// All isomorphisms `s → t` whose vertex map extends `hint`, sorted by the
/// images of vertices, then edges, then half-edges in ascending source-id
/// order.
pub fn find_isomorphisms(s: &TrainTrack, t: &TrainTrack, hint: &[(VertexId, VertexId)]) -> Vec<Isomorphism> {
    if s.vertex_count() != t.vertex_count() || s.edge_count() != t.edge_count() {
        return Vec::new();
    }
    let roots: Vec<usize> = s
        .connected_components()
        .iter()
        .map(|c| s.vertex_index(*c.iter().min().unwrap()).unwrap())
        .collect();
    let mut found = Vec::new();
    let start = Partial { used: vec![false; t.vertex_count()], ..Default::default() };
    search(s, t, &roots, 0, start, hint, &mut found);
    let mut out: Vec<Isomorphism> = found.iter().filter_map(|p| finish(s, t, p)).collect();
    out.sort_by_key(|i| i.sort_key());
    out.dedup();
    out
}

fn search(
    s: &TrainTrack,
    t: &TrainTrack,
    roots: &[usize],
    i: usize,
    p: Partial,
    hint: &[(VertexId, VertexId)],
    found: &mut Vec<Partial>,
) {
    if i == roots.len() {
        let ok = hint.iter().all(|&(a, b)| {
            s.vertex_index(a).and_then(|x| p.vmap.get(&x)).map(|&(y, _)| t.vertices()[y].id) == Some(b)
        });
        if ok {
            found.push(p);
        }
        return;
    }
    for b in 0..t.vertex_count() {
        if p.used[b] {
            continue;
        }
        for swap in [false, true] {
            if let Some(q) = propagate(s, t, p.clone(), roots[i], b, swap) {
                search(s, t, roots, i + 1, q, hint, found);
            }
        }
    }
}

/// Least isomorphism `s → t` extending `hint`, if any.
pub fn find_isomorphism(s: &TrainTrack, t: &TrainTrack, hint: &[(VertexId, VertexId)]) -> Option<Isomorphism> {
    find_isomorphisms(s, t, hint).into_iter().next()
}
