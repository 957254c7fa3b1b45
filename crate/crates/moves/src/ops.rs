use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use polyexact::IntMatrix;
use serde::{Deserialize, Serialize};
use traintrack::{Edge, EdgeId, HalfId, TrackData, TrainTrack, Vertex, VertexId};

use crate::MoveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Subdivide,
    Fold,
    Delete,
    Isomorphism,
}

/// Parameters of a primitive move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Move {
    Subdivide { edge: EdgeId },
    Fold { vertex: VertexId, left: EdgeId, right: EdgeId },
    Delete { edge: EdgeId },
}

#[derive(Clone, Debug)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub params: Option<Move>,
    pub result: TrainTrack,
    /// Edge-space transition matrix (target edges × source edges). For
    /// deletions this is instead the zero-extension inclusion of the new
    /// edge space into the old one (old edges × new edges).
    pub matrix: IntMatrix,
    /// Signed vertex map (target vertices × source vertices): `+1` when `E¹`
    /// of the source vertex lands in `E¹` of its image, `-1` when it lands in
    /// `E²`. For deletions, the inclusion of new vertices into old ones.
    pub vertex_signs: IntMatrix,
    /// Pairs `(source component, target component)` of boundary components
    /// (indices into `boundary_components()`) sharing an edge side.
    pub boundary: Vec<(usize, usize)>,
}

impl MoveRecord {
    /// Image component of each source component, when the correspondence is
    /// a function.
    pub fn boundary_map(&self) -> Option<Vec<usize>> {
        let n = self.boundary.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let mut out = vec![None; n];
        for &(a, b) in &self.boundary {
            match out[a] {
                None => out[a] = Some(b),
                Some(x) if x == b => {}
                Some(_) => return None,
            }
        }
        out.into_iter().collect()
    }
}

pub(crate) fn id_labels(ids: &[u32]) -> Vec<String> {
    ids.iter().map(|i| i.to_string()).collect()
}

/// Matrix with rows `dst`, columns `src`, entry 1 at `(image(x), x)` for each
/// listed pair.
pub(crate) fn map_matrix(dst: &[u32], src: &[u32], pairs: &[(u32, u32)]) -> IntMatrix {
    let rpos: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let cpos: BTreeMap<u32, usize> = src.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    for &(to, from) in pairs {
        m.add_to(rpos[&to], cpos[&from], &BigInt::from(1));
    }
    m.with_labels(id_labels(dst), id_labels(src)).expect("label counts match")
}

fn signed_vertex_matrix(dst: &[u32], src: &[u32], entries: &[(u32, u32, i64)]) -> IntMatrix {
    let rpos: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let cpos: BTreeMap<u32, usize> = src.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    for &(to, from, s) in entries {
        m.set(rpos[&to], cpos[&from], BigInt::from(s));
    }
    m.with_labels(id_labels(dst), id_labels(src)).expect("label counts match")
}

/// Pairs of components joined by an edge side. The side leaving along half
/// `h` is carried to the side leaving along `sides[h]` (default `h`; `None`
/// drops it).
fn boundary_relation(
    before: &TrainTrack,
    after: &TrainTrack,
    sides: &HashMap<HalfId, Option<HalfId>>,
) -> Vec<(usize, usize)> {
    let a = before.component_of_half();
    let b = after.component_of_half();
    let mut pairs: Vec<(usize, usize)> = a
        .iter()
        .filter_map(|(h, &ca)| {
            let h2 = sides.get(h).copied().unwrap_or(Some(*h))?;
            b.get(&h2).map(|&cb| (ca, cb))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn next_id<I: Iterator<Item = u32>>(it: I) -> u32 {
    it.max().map_or(0, |m| m + 1)
}

/// Split `edge` at a new bivalent vertex. The piece containing
/// `halves[fresh_end]` receives a new edge id; the other piece keeps `edge`.
pub(crate) fn subdivide_side(t: &TrainTrack, edge: EdgeId, fresh_end: usize) -> Result<MoveRecord, MoveError> {
    let ei = t.edge_index(edge).ok_or_else(|| MoveError::NotFound(format!("edge {edge}")))?;
    let e = t.edges()[ei].clone();
    let w = next_id(t.vertices().iter().map(|v| v.id));
    let fresh = next_id(t.edges().iter().map(|e| e.id));
    let n1 = t.max_half_id().map_or(0, |m| m + 1);
    let n2 = n1 + 1;
    let mut data = t.data().clone();
    // kept piece: [halves[1 - fresh_end] side ... w]; fresh piece: [w ... halves[fresh_end] side]
    let (kept, new_edge) = if fresh_end == 1 {
        (Edge { id: e.id, halves: [e.halves[0], n1], kind: e.kind }, Edge { id: fresh, halves: [n2, e.halves[1]], kind: e.kind })
    } else {
        (Edge { id: fresh, halves: [e.halves[0], n1], kind: e.kind }, Edge { id: e.id, halves: [n2, e.halves[1]], kind: e.kind })
    };
    data.edges[ei] = kept;
    data.edges.push(new_edge);
    data.vertices.push(Vertex { id: w, half_edges: vec![n1, n2], split: 1 });
    let result = TrainTrack::new(data)?;
    let src = t.edge_ids(None);
    let dst = result.edge_ids(None);
    let mut pairs: Vec<(u32, u32)> = src.iter().map(|&x| (x, x)).collect();
    pairs.push((fresh, edge));
    let vsrc = t.vertex_ids();
    let vdst = result.vertex_ids();
    let signs: Vec<(u32, u32, i64)> = vsrc.iter().map(|&v| (v, v, 1)).collect();
    Ok(MoveRecord {
        kind: MoveKind::Subdivide,
        params: Some(Move::Subdivide { edge }),
        boundary: boundary_relation(t, &result, &HashMap::new()),
        matrix: map_matrix(&dst, &src, &pairs),
        vertex_signs: signed_vertex_matrix(&vdst, &vsrc, &signs),
        result,
    })
}

/// Replace `edge` by two edges through a new bivalent vertex. The original id
/// stays on the piece at `halves[0]`; the other piece gets a fresh id.
pub fn subdivide(t: &TrainTrack, edge: EdgeId) -> Result<MoveRecord, MoveError> {
    subdivide_side(t, edge, 1)
}

/// Locate the cusp at `vertex` formed by consecutive half-edges of `left` and
/// `right` in one smoothing arc. Returns the position of the left half.
fn find_cusp(t: &TrainTrack, vertex: VertexId, left: EdgeId, right: EdgeId) -> Result<usize, MoveError> {
    let v = t.vertex(vertex).ok_or_else(|| MoveError::NotFound(format!("vertex {vertex}")))?;
    let hits: Vec<usize> = (0..v.half_edges.len().saturating_sub(1))
        .filter(|&i| {
            v.arc_at(i) == v.arc_at(i + 1)
                && t.edge_of(v.half_edges[i]) == left
                && t.edge_of(v.half_edges[i + 1]) == right
        })
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(MoveError::InvalidCusp(format!(
            "edges {left} and {right} are not adjacent in one smoothing arc at vertex {vertex} with {left} on the left"
        ))),
        _ => Err(MoveError::InvalidCusp(format!("cusp ({left}, {right}) at vertex {vertex} is ambiguous"))),
    }
}

/// Fold the edges forming the cusp `(vertex, left, right)`, `left` lying left
/// of `right`. Their far endpoints `v1`, `v2` merge into one switch; with
/// `A ∋ left`, `B` the arcs at `v1` and `C ∋ right`, `D` the arcs at `v2`,
/// the new switch has `E¹ = B ++ D` and `E² = (C - right) ++ [e] ++ (A - left)`.
/// This is a train track only when `left` is first in `A` and `right` is
/// last in `C`, which is therefore required. The merged edge and vertex keep
/// the smaller of the two ids.
pub fn fold(t: &TrainTrack, vertex: VertexId, left: EdgeId, right: EdgeId) -> Result<MoveRecord, MoveError> {
    if left == right {
        return Err(MoveError::InvalidCusp(format!("cannot fold edge {left} with itself")));
    }
    let pos = find_cusp(t, vertex, left, right)?;
    let vi = t.vertex_index(vertex).unwrap();
    let v = &t.vertices()[vi];
    let (a, b) = (v.half_edges[pos], v.half_edges[pos + 1]);
    let (fa, fb) = (t.mate(a), t.mate(b));
    // half-edge lists after replacing the folded pair at `vertex`; a folded
    // loop has its far end at `vertex` itself and is read from these lists
    let mut lists: Vec<(Vec<HalfId>, Vec<HalfId>)> =
        t.vertices().iter().map(|x| (x.arc(0).to_vec(), x.arc(1).to_vec())).collect();
    let (kept, dropped) = (left.min(right), left.max(right));
    let (kept_near, kept_far) = if kept == left { (a, fa) } else { (b, fb) };
    {
        let arc = if pos < v.split { &mut lists[vi].0 } else { &mut lists[vi].1 };
        let i = arc.iter().position(|&h| h == a).unwrap();
        arc.splice(i..i + 2, [kept_near]);
    }
    let (i1, i2) = (t.slot(fa).vertex, t.slot(fb).vertex);
    if i1 == i2 {
        return Err(MoveError::InvalidFold("far endpoints of the folded edges coincide".into()));
    }
    let arc_a: u8 = if lists[i1].0.contains(&fa) { 0 } else { 1 };
    let arc_c: u8 = if lists[i2].0.contains(&fb) { 0 } else { 1 };
    let pick = |l: &(Vec<HalfId>, Vec<HalfId>), x: u8| if x == 0 { l.0.clone() } else { l.1.clone() };
    let (a_list, b_list) = (pick(&lists[i1], arc_a), pick(&lists[i1], 1 - arc_a));
    let (c_list, d_list) = (pick(&lists[i2], arc_c), pick(&lists[i2], 1 - arc_c));
    let (v1, v2) = (&t.vertices()[i1], &t.vertices()[i2]);
    if a_list[0] != fa {
        return Err(MoveError::InvalidFold(format!(
            "edge {left} is not the first half-edge of its smoothing arc at vertex {}",
            v1.id
        )));
    }
    if *c_list.last().unwrap() != fb {
        return Err(MoveError::InvalidFold(format!(
            "edge {right} is not the last half-edge of its smoothing arc at vertex {}",
            v2.id
        )));
    }
    let mut merged: Vec<HalfId> = b_list.iter().chain(&d_list).copied().collect();
    let split = merged.len();
    merged.extend(c_list[..c_list.len() - 1].iter().copied());
    merged.push(kept_far);
    merged.extend(a_list[1..].iter().copied());
    let merged_id = v1.id.min(v2.id);
    let gone_id = v1.id.max(v2.id);

    let mut data = TrackData { vertices: Vec::new(), edges: Vec::new() };
    for (i, x) in t.vertices().iter().enumerate() {
        if x.id == merged_id {
            data.vertices.push(Vertex { id: merged_id, half_edges: merged.clone(), split });
        } else if x.id != gone_id {
            let (e1, e2) = &lists[i];
            data.vertices.push(Vertex { id: x.id, half_edges: [e1.as_slice(), e2].concat(), split: e1.len() });
        }
    }
    data.edges = t.edges().iter().filter(|e| e.id != dropped).cloned().collect();
    let result = TrainTrack::new(data)?;

    let src = t.edge_ids(None);
    let dst = result.edge_ids(None);
    let pairs: Vec<(u32, u32)> = src.iter().map(|&x| (if x == dropped { kept } else { x }, x)).collect();
    let vsrc = t.vertex_ids();
    let vdst = result.vertex_ids();
    // +1 iff the arc kept as E¹ (B or D) was E¹ at the old vertex
    let sign = |arc_with_edge: u8| if arc_with_edge == 1 { 1 } else { -1 };
    let signs: Vec<(u32, u32, i64)> = vsrc
        .iter()
        .map(|&x| {
            if x == v1.id {
                (merged_id, x, sign(arc_a))
            } else if x == v2.id {
                (merged_id, x, sign(arc_c))
            } else {
                (x, x, 1)
            }
        })
        .collect();
    // the sides facing the cusp collapse; the far side of the dropped edge
    // becomes the corresponding side of the kept one
    let sides: HashMap<HalfId, Option<HalfId>> = if kept == left {
        [(fa, None), (b, None), (fb, Some(fa))].into()
    } else {
        [(fa, None), (b, None), (a, Some(b))].into()
    };
    Ok(MoveRecord {
        kind: MoveKind::Fold,
        params: Some(Move::Fold { vertex, left, right }),
        boundary: boundary_relation(t, &result, &sides),
        matrix: map_matrix(&dst, &src, &pairs),
        vertex_signs: signed_vertex_matrix(&vdst, &vsrc, &signs),
        result,
    })
}

/// Subdivide the edge `slide` (one of `left`, `right`) next to `vertex` and
/// fold the short piece onto the other edge of the cusp. Edge and vertex ids
/// of the input survive unchanged; the composite sends `slide` to
/// `slide + other`.
pub fn split_fold(
    t: &TrainTrack,
    vertex: VertexId,
    left: EdgeId,
    right: EdgeId,
    slide: EdgeId,
) -> Result<Vec<MoveRecord>, MoveError> {
    if slide != left && slide != right {
        return Err(MoveError::InvalidCusp(format!("slid edge {slide} is not part of the cusp ({left}, {right})")));
    }
    let pos = find_cusp(t, vertex, left, right)?;
    let v = t.vertex(vertex).unwrap();
    let near = if slide == left { v.half_edges[pos] } else { v.half_edges[pos + 1] };
    let end = t.slot(near).end;
    let sub = subdivide_side(t, slide, end)?;
    let piece = sub.result.edge_of(near);
    let (l, r) = if slide == left { (piece, right) } else { (left, piece) };
    let folded = fold(&sub.result, vertex, l, r)?;
    Ok(vec![sub, folded])
}

/// Remove `edge`, provided every smoothing arc at its endpoints keeps at
/// least one other half-edge.
pub fn delete_edge(t: &TrainTrack, edge: EdgeId) -> Result<MoveRecord, MoveError> {
    let ei = t.edge_index(edge).ok_or_else(|| MoveError::NotFound(format!("edge {edge}")))?;
    let halves = t.edges()[ei].halves;
    let mut data = t.data().clone();
    data.edges.remove(ei);
    for x in data.vertices.iter_mut() {
        let before_split = x.half_edges[..x.split].iter().filter(|h| halves.contains(h)).count();
        if before_split == 0 && !x.half_edges.iter().any(|h| halves.contains(h)) {
            continue;
        }
        x.half_edges.retain(|h| !halves.contains(h));
        x.split -= before_split;
        if x.split == 0 || x.split == x.half_edges.len() {
            return Err(MoveError::CannotDelete(format!(
                "edge {edge} is alone in a smoothing arc at vertex {}",
                x.id
            )));
        }
    }
    let result = TrainTrack::new(data)?;
    let old = t.edge_ids(None);
    let new = result.edge_ids(None);
    let pairs: Vec<(u32, u32)> = new.iter().map(|&x| (x, x)).collect();
    let vs = t.vertex_ids();
    let signs: Vec<(u32, u32, i64)> = vs.iter().map(|&x| (x, x, 1)).collect();
    Ok(MoveRecord {
        kind: MoveKind::Delete,
        params: Some(Move::Delete { edge }),
        boundary: boundary_relation(t, &result, &HashMap::new()),
        matrix: map_matrix(&old, &new, &pairs),
        vertex_signs: signed_vertex_matrix(&vs, &vs, &signs),
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use traintrack::models::{tau_model, ChordDiagram};

    #[test]
    fn subdivide_counts() {
        let t = tau_model(3);
        let r = subdivide(&t, 4).unwrap();
        assert_eq!(r.result.vertex_count(), 4);
        assert_eq!(r.result.edge_count(), 7);
        assert_eq!(r.result.euler_characteristic(), t.euler_characteristic());
        assert!(!r.result.is_standardly_embedded());
        assert_eq!(r.result.prong_profile(), t.prong_profile());
        assert_eq!(r.boundary_map().unwrap(), (0..5).collect::<Vec<_>>().iter().map(|&i| {
            r.boundary.iter().find(|p| p.0 == i).unwrap().1
        }).collect::<Vec<_>>());
        assert!(matches!(subdivide(&t, 99), Err(MoveError::NotFound(_))));
    }

    #[test]
    fn fold_rejects_non_cusp() {
        let t = tau_model(3);
        // at vertex 0 the real arc is [e_2 end 1, e_0 end 0] = edges 5, 3
        assert!(matches!(fold(&t, 0, 3, 5), Err(MoveError::InvalidCusp(_))));
        assert!(matches!(fold(&t, 0, 5, 0), Err(MoveError::InvalidCusp(_))));
    }

    fn pentagon() -> TrainTrack {
        ChordDiagram {
            polygons: vec![5],
            reals: vec![
                vec![(0, 0)],
                vec![(1, 0)],
                vec![(2, 0)],
                vec![(0, 1), (3, 0)],
                vec![(1, 1), (2, 1), (3, 1)],
            ],
        }
        .to_track()
        .unwrap()
    }

    #[test]
    fn tau_admits_no_split_fold() {
        let t = tau_model(4);
        for (a, b) in t.left_pairs() {
            let (v, x, y) = (t.vertex_of(a), t.edge_of(a), t.edge_of(b));
            assert!(split_fold(&t, v, x, y, x).is_err());
            assert!(split_fold(&t, v, x, y, y).is_err());
        }
    }

    #[test]
    fn split_fold_preserves_ids() {
        let t = pentagon();
        // chord 2 (edge 7) slides over chord 3 (edge 8) at vertex 4
        let recs = split_fold(&t, 4, 7, 8, 7).unwrap();
        let out = &recs[1].result;
        assert_eq!(out.vertex_ids(), t.vertex_ids());
        assert_eq!(out.edge_ids(None), t.edge_ids(None));
        assert_eq!(out.euler_characteristic(), t.euler_characteristic());
        let m = recs[1].matrix.mul(&recs[0].matrix).unwrap();
        assert_eq!(m.get(7, 7), &BigInt::from(1));
        assert_eq!(m.get(8, 7), &BigInt::from(1));
        assert_eq!(m.get(8, 8), &BigInt::from(1));
        assert_eq!(m.rows().iter().flatten().filter(|x| **x != BigInt::from(0)).count(), 10);
        // vertex 4 now carries chord 3 alone among its real half-edges next to chord 1
        let v4 = out.vertex(4).unwrap();
        assert_eq!(v4.half_edges.len(), 4);
        assert_eq!(recs[1].boundary_map().map(|m| m.len()), Some(out.boundary_components().len()));
        assert_eq!(out.prong_profile(), t.prong_profile());
    }

    #[test]
    fn delete_bookkeeping() {
        let t = tau_model(3);
        // every real edge sits with one other real in its arc
        let r = delete_edge(&t, 3).unwrap();
        assert_eq!(r.result.edge_count(), 5);
        let r2 = delete_edge(&r.result, 4);
        assert!(matches!(r2, Err(MoveError::CannotDelete(_))));
    }
}
